#include <algorithm>

#include "hasse/cohomology.hpp"
#include "hasse/error.hpp"

namespace hasse::coh {

GModule::GModule(std::shared_ptr<const grp::FiniteGroup> group, std::uint32_t p, std::size_t dim,
                 std::vector<fp::Matrix> action, std::string name, std::vector<fp::Elem> determinant)
    : group_(std::move(group)),
      p_(p),
      dim_(dim),
      action_(std::move(action)),
      name_(std::move(name)),
      det_(std::move(determinant)) {
    fp::check_modulus(p);
    const auto n = static_cast<int>(group_->order());
    if (action_.size() != group_->order())
        throw DimensionMismatch("one action matrix per group element is required");
    if (!det_.empty() && det_.size() != group_->order())
        throw DimensionMismatch("determinant character has the wrong length");
    for (const auto& a : action_)
        if (a.rows() != dim_ || a.cols() != dim_ || a.modulus() != p_)
            throw DimensionMismatch("action matrix shape or modulus");
    if (!(action_[group_->identity()] == fp::Matrix::identity(p_, dim_)))
        throw NotHomomorphism("identity does not act trivially");
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (!(action_[group_->mul(g, h)] == action_[g] * action_[h]))
                throw NotHomomorphism("action is not multiplicative in module " + name_);
}

namespace {

std::vector<fp::Elem> det_character(const grp::MatGroup& g) {
    std::vector<fp::Elem> d;
    d.reserve(g.order());
    for (const auto& x : g.elements()) d.push_back(grp::det(x, g.p()));
    return d;
}

std::size_t sym_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i > j) std::swap(i, j);
    // pairs (0,0),(0,1),...,(0,n-1),(1,1),...
    return i * n - i * (i - 1) / 2 + (j - i);
}

std::size_t alt_index(std::size_t i, std::size_t j, std::size_t n) {
    // i < j: pairs (0,1),...,(0,n-1),(1,2),...
    return i * (n - 1) - i * (i - 1) / 2 + (j - i - 1);
}

void require_same_group(const GModule& a, const GModule& b) {
    if (a.p() != b.p() || !(a.group() == b.group() || a.group()->same_table(*b.group())))
        throw GroupMismatch("modules " + a.name() + " and " + b.name() +
                            " live over different groups");
}

}  // namespace

ModulePtr trivial_module(const grp::MatGroup& g, std::size_t dim) {
    std::vector<fp::Matrix> act(g.order(), fp::Matrix::identity(g.p(), dim));
    return std::make_shared<const GModule>(g.table(), g.p(), dim, std::move(act),
                                           dim == 1 ? "trivial" : "trivial^" + std::to_string(dim),
                                           det_character(g));
}

ModulePtr trivial_module(std::shared_ptr<const grp::FiniteGroup> g, std::uint32_t p,
                         std::size_t dim) {
    std::vector<fp::Matrix> act(g->order(), fp::Matrix::identity(p, dim));
    return std::make_shared<const GModule>(std::move(g), p, dim, std::move(act), "trivial");
}

ModulePtr standard_module(const grp::MatGroup& g) {
    std::vector<fp::Matrix> act;
    act.reserve(g.order());
    for (const auto& x : g.elements()) act.push_back(grp::to_matrix(x, g.p()));
    return std::make_shared<const GModule>(g.table(), g.p(), 2, std::move(act), "V",
                                           det_character(g));
}

ModulePtr sym2(const GModule& m) {
    const std::size_t n = m.dim();
    const std::size_t d = n * (n + 1) / 2;
    const std::uint32_t p = m.p();
    std::vector<fp::Matrix> act;
    act.reserve(m.group()->order());
    for (std::size_t g = 0; g < m.group()->order(); ++g) {
        const auto& a = m.action(static_cast<int>(g));
        fp::Matrix s(p, d, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const std::size_t col = sym_index(i, j, n);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        const std::size_t row = sym_index(k, l, n);
                        s(row, col) = static_cast<fp::Elem>(
                            (s(row, col) + static_cast<std::uint64_t>(a(k, i)) * a(l, j)) % p);
                    }
            }
        act.push_back(std::move(s));
    }
    return std::make_shared<const GModule>(m.group(), p, d, std::move(act),
                                           "sym2(" + m.name() + ")", m.determinant());
}

ModulePtr lambda2(const GModule& m) {
    const std::size_t n = m.dim();
    const std::size_t d = n * (n - 1) / 2;
    const std::uint32_t p = m.p();
    std::vector<fp::Matrix> act;
    for (std::size_t g = 0; g < m.group()->order(); ++g) {
        const auto& a = m.action(static_cast<int>(g));
        fp::Matrix s(p, d, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = k + 1; l < n; ++l)
                        s.set(alt_index(k, l, n), alt_index(i, j, n),
                              static_cast<long long>(a(k, i)) * a(l, j) -
                                  static_cast<long long>(a(l, i)) * a(k, j));
        act.push_back(std::move(s));
    }
    return std::make_shared<const GModule>(m.group(), p, d, std::move(act),
                                           "lambda2(" + m.name() + ")", m.determinant());
}

ModulePtr tensor(const GModule& a, const GModule& b) {
    require_same_group(a, b);
    std::vector<fp::Matrix> act;
    act.reserve(a.group()->order());
    for (std::size_t g = 0; g < a.group()->order(); ++g)
        act.push_back(a.action(static_cast<int>(g)).kron(b.action(static_cast<int>(g))));
    const auto& det = a.determinant().empty() ? b.determinant() : a.determinant();
    return std::make_shared<const GModule>(a.group(), a.p(), a.dim() * b.dim(), std::move(act),
                                           a.name() + "(x)" + b.name(), det);
}

ModulePtr direct_sum(const GModule& a, const GModule& b) {
    require_same_group(a, b);
    const std::size_t d = a.dim() + b.dim();
    std::vector<fp::Matrix> act;
    for (std::size_t g = 0; g < a.group()->order(); ++g) {
        fp::Matrix s(a.p(), d, d);
        const auto& x = a.action(static_cast<int>(g));
        const auto& y = b.action(static_cast<int>(g));
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) s(i, j) = x(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) s(a.dim() + i, a.dim() + j) = y(i, j);
        act.push_back(std::move(s));
    }
    const auto& det = a.determinant().empty() ? b.determinant() : a.determinant();
    return std::make_shared<const GModule>(a.group(), a.p(), d, std::move(act),
                                           a.name() + "+" + b.name(), det);
}

ModulePtr det_twist(const GModule& m, int k) {
    if (m.determinant().empty())
        throw Unsupported("det twist needs a module over a matrix group");
    const std::uint32_t p = m.p();
    std::vector<fp::Matrix> act;
    for (std::size_t g = 0; g < m.group()->order(); ++g) {
        fp::Elem d = m.determinant()[g];
        if (k < 0) d = fp::inv_mod(d, p);
        const auto e = static_cast<std::uint64_t>(k < 0 ? -static_cast<long long>(k) : k);
        act.push_back(m.action(static_cast<int>(g)).scaled(fp::pow_mod(d, e, p)));
    }
    return std::make_shared<const GModule>(m.group(), p, m.dim(), std::move(act),
                                           m.name() + "*det^" + std::to_string(k),
                                           m.determinant());
}

ModulePtr ad(const grp::MatGroup& g) {
    auto v = standard_module(g);
    auto twisted = det_twist(*sym2(*v), -1);
    // Same module, conventional name.
    std::vector<fp::Matrix> act;
    for (std::size_t x = 0; x < g.order(); ++x) act.push_back(twisted->action(static_cast<int>(x)));
    return std::make_shared<const GModule>(g.table(), g.p(), 3, std::move(act), "ad",
                                           twisted->determinant());
}

std::string to_string(ModuleKind k) {
    switch (k) {
        case ModuleKind::Trivial: return "trivial";
        case ModuleKind::Standard: return "V";
        case ModuleKind::Sym2: return "sym2";
        case ModuleKind::Ad: return "ad";
        case ModuleKind::TensorVV: return "VxV";
    }
    return "?";
}

ModuleKind parse_module_kind(const std::string& name) {
    for (auto k : all_module_kinds())
        if (to_string(k) == name) return k;
    throw ParseError("unknown module '" + name + "' (expected trivial, V, sym2, ad, VxV)");
}

const std::vector<ModuleKind>& all_module_kinds() {
    static const std::vector<ModuleKind> kinds{ModuleKind::Trivial, ModuleKind::Standard,
                                               ModuleKind::Sym2, ModuleKind::Ad,
                                               ModuleKind::TensorVV};
    return kinds;
}

ModulePtr build_module(ModuleKind kind, const grp::MatGroup& g) {
    switch (kind) {
        case ModuleKind::Trivial: return trivial_module(g);
        case ModuleKind::Standard: return standard_module(g);
        case ModuleKind::Sym2: return sym2(*standard_module(g));
        case ModuleKind::Ad: return ad(g);
        case ModuleKind::TensorVV: {
            auto v = standard_module(g);
            return tensor(*v, *v);
        }
    }
    throw Unsupported("module kind");
}

ModulePtr restrict_module(const GModule& m, const grp::Embedded& sub) {
    grp::check_homomorphism(*sub.group, *m.group(), sub.inclusion);
    std::vector<fp::Matrix> act;
    std::vector<fp::Elem> det;
    for (int x : sub.inclusion) {
        act.push_back(m.action(x));
        if (!m.determinant().empty()) det.push_back(m.determinant()[x]);
    }
    return std::make_shared<const GModule>(sub.group, m.p(), m.dim(), std::move(act), m.name(),
                                           std::move(det));
}

std::vector<fp::Vec> h0(const GModule& m) {
    const std::size_t d = m.dim();
    fp::RowBasis rows(m.p(), d);
    const auto id = fp::Matrix::identity(m.p(), d);
    const auto& gens = m.group()->generators();
    for (int s : gens) {
        const auto diff = m.action(s) - id;
        for (std::size_t r = 0; r < d; ++r)
            rows.insert(fp::Vec(diff.row(r).begin(), diff.row(r).end()));
    }
    return rows.null_space();
}

}  // namespace hasse::coh
