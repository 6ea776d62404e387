// Cocycle spaces are parametrized through a breadth-first spanning tree of
// the Cayley graph (left multiplication by generators). A 1-cochain with
// f(1) = 0 satisfying f(sh) = f(s) + s.f(h) for every generator s and every h
// is a cocycle: the set of g with f(gh) = f(g) + g.f(h) for all h contains 1
// and is closed under left multiplication by generators. The tree expresses
// f(g) through the generator values; the non-tree edges give the remaining
// linear conditions. Degree 2 works the same way on the first argument, using
// the relation dd = 0 to see that the conditions at (s, h, k) suffice.

#include <algorithm>
#include <deque>

#include "hasse/cohomology.hpp"
#include "hasse/error.hpp"

namespace hasse::coh {

namespace {

struct SpanningTree {
    std::vector<int> gens;          // non-identity generators
    std::vector<int> bfs;           // elements in visiting order
    std::vector<int> parent;        // h with g = s h (-1 at the identity)
    std::vector<int> parent_gen;    // index of s in gens
};

SpanningTree spanning_tree(const grp::FiniteGroup& g) {
    SpanningTree t;
    for (int s : g.generators())
        if (s != g.identity() && std::find(t.gens.begin(), t.gens.end(), s) == t.gens.end())
            t.gens.push_back(s);
    const std::size_t n = g.order();
    t.parent.assign(n, -1);
    t.parent_gen.assign(n, -1);
    std::vector<bool> seen(n, false);
    seen[g.identity()] = true;
    t.bfs.push_back(g.identity());
    for (std::size_t i = 0; i < t.bfs.size(); ++i) {
        const int h = t.bfs[i];
        for (std::size_t si = 0; si < t.gens.size(); ++si) {
            const int x = g.mul(t.gens[si], h);
            if (seen[x]) continue;
            seen[x] = true;
            t.parent[x] = h;
            t.parent_gen[x] = static_cast<int>(si);
            t.bfs.push_back(x);
        }
    }
    if (t.bfs.size() != n) throw NotSubgroup("generators do not generate the group");
    return t;
}

bool is_tree_edge(const SpanningTree& t, int si, int h, int x) {
    return t.parent[x] == h && t.parent_gen[x] == si;
}

// f(g) = L[g] x with x the concatenated generator values.
struct Z1Data {
    SpanningTree tree;
    std::size_t vars = 0;
    std::vector<fp::Matrix> L;
    std::vector<fp::Vec> cocycles;     // basis of Z^1 in x-coordinates
    std::vector<fp::Vec> coboundaries; // spanning set of B^1 in x-coordinates
};

Z1Data z1_data(const GModule& m) {
    const auto& g = *m.group();
    const std::uint32_t p = m.p();
    const std::size_t d = m.dim();
    Z1Data z;
    z.tree = spanning_tree(g);
    const std::size_t k = z.tree.gens.size();
    z.vars = k * d;
    z.L.assign(g.order(), fp::Matrix(p, d, z.vars));

    auto select = [&](std::size_t si) {
        fp::Matrix e(p, d, z.vars);
        for (std::size_t i = 0; i < d; ++i) e(i, si * d + i) = 1;
        return e;
    };

    fp::RowBasis conditions(p, z.vars);
    for (int h : z.tree.bfs)
        for (std::size_t si = 0; si < k; ++si) {
            const int s = z.tree.gens[si];
            const int x = g.mul(s, h);
            fp::Matrix rhs = select(si) + m.action(s) * z.L[h];
            if (is_tree_edge(z.tree, static_cast<int>(si), h, x)) {
                z.L[x] = std::move(rhs);
            } else {
                const fp::Matrix diff = z.L[x] - rhs;
                for (std::size_t r = 0; r < d; ++r)
                    conditions.insert(fp::Vec(diff.row(r).begin(), diff.row(r).end()));
            }
        }
    z.cocycles = conditions.null_space();

    const auto id = fp::Matrix::identity(p, d);
    for (std::size_t j = 0; j < d; ++j) {
        fp::Vec x(z.vars, 0);
        for (std::size_t si = 0; si < k; ++si) {
            const auto diff = m.action(z.tree.gens[si]) - id;
            for (std::size_t i = 0; i < d; ++i) x[si * d + i] = diff(i, j);
        }
        z.coboundaries.push_back(std::move(x));
    }
    return z;
}

fp::Vec expand1(const Z1Data& z, const GModule& m, const fp::Vec& x) {
    const std::size_t d = m.dim();
    fp::Vec out(m.group()->order() * d, 0);
    for (std::size_t g = 0; g < m.group()->order(); ++g) {
        const auto v = z.L[g] * std::span<const fp::Elem>(x);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<long>(g * d));
    }
    return out;
}

// Full-table coboundaries g -> (g - 1) e_j.
std::vector<fp::Vec> coboundary_tables(const GModule& m) {
    const std::size_t n = m.group()->order();
    const std::size_t d = m.dim();
    const auto id = fp::Matrix::identity(m.p(), d);
    std::vector<fp::Vec> out;
    for (std::size_t j = 0; j < d; ++j) {
        fp::Vec f(n * d, 0);
        for (std::size_t g = 0; g < n; ++g) {
            const auto diff = m.action(static_cast<int>(g)) - id;
            for (std::size_t i = 0; i < d; ++i) f[g * d + i] = diff(i, j);
        }
        out.push_back(std::move(f));
    }
    return out;
}

void require_same_module_group(const GModule& a, const GModule& b) {
    if (a.p() != b.p() || !(a.group() == b.group() || a.group()->same_table(*b.group())))
        throw GroupMismatch("cochains over different groups");
}

int cyclic_generator(const grp::FiniteGroup& g) {
    const auto n = static_cast<int>(g.order());
    for (int x = 0; x < n; ++x)
        if (g.element_order(x) == n) return x;
    throw NotCyclic("group of order " + std::to_string(n) + " is not cyclic");
}

}  // namespace

// ---------------------------------------------------------------------------
// CohomologyClass

CohomologyClass::CohomologyClass(int degree, ModulePtr module, fp::Vec values)
    : degree_(degree), module_(std::move(module)), values_(std::move(values)) {
    if (degree_ != 1 && degree_ != 2) throw Unsupported("only degrees 1 and 2 are represented");
    std::size_t expected = module_->dim();
    for (int i = 0; i < degree_; ++i) expected *= module_->group()->order();
    if (values_.size() != expected) throw DimensionMismatch("cochain table has the wrong size");
}

CohomologyClass CohomologyClass::zero(int degree, ModulePtr module) {
    std::size_t size = module->dim();
    for (int i = 0; i < degree; ++i) size *= module->group()->order();
    return CohomologyClass(degree, std::move(module), fp::Vec(size, 0));
}

std::span<const fp::Elem> CohomologyClass::value(int g) const {
    const std::size_t d = module_->dim();
    return {values_.data() + static_cast<std::size_t>(g) * d, d};
}

std::span<const fp::Elem> CohomologyClass::value(int g, int h) const {
    const std::size_t d = module_->dim();
    const std::size_t n = module_->group()->order();
    return {values_.data() + (static_cast<std::size_t>(g) * n + h) * d, d};
}

bool CohomologyClass::satisfies_cocycle_identity() const {
    const auto& g = *module_->group();
    const auto n = static_cast<int>(g.order());
    const std::uint32_t p = module_->p();
    if (degree_ == 1) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto rhs = fp::add(value(a), module_->action(a) * value(b), p);
                if (!std::equal(rhs.begin(), rhs.end(), value(g.mul(a, b)).begin())) return false;
            }
        return true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                auto t = module_->action(a) * value(b, c);
                t = fp::sub(t, value(g.mul(a, b), c), p);
                t = fp::add(t, value(a, g.mul(b, c)), p);
                t = fp::sub(t, value(a, b), p);
                if (!fp::is_zero(t)) return false;
            }
    return true;
}

bool CohomologyClass::is_normalized() const {
    const auto& g = *module_->group();
    const int e = g.identity();
    if (degree_ == 1) return fp::is_zero(value(e));
    for (int x = 0; x < static_cast<int>(g.order()); ++x)
        if (!fp::is_zero(value(e, x)) || !fp::is_zero(value(x, e))) return false;
    return true;
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& rhs) const {
    require_same_module_group(*module_, *rhs.module_);
    if (degree_ != rhs.degree_ || module_->dim() != rhs.module_->dim())
        throw DimensionMismatch("adding cochains of different shape");
    return CohomologyClass(degree_, module_, fp::add(values_, rhs.values_, module_->p()));
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& rhs) const {
    require_same_module_group(*module_, *rhs.module_);
    if (degree_ != rhs.degree_ || module_->dim() != rhs.module_->dim())
        throw DimensionMismatch("subtracting cochains of different shape");
    return CohomologyClass(degree_, module_, fp::sub(values_, rhs.values_, module_->p()));
}

CohomologyClass CohomologyClass::scaled(fp::Elem s) const {
    return CohomologyClass(degree_, module_, fp::scale(values_, s % module_->p(), module_->p()));
}

// ---------------------------------------------------------------------------
// Coboundary decisions

bool is_coboundary(const CohomologyClass& c) {
    if (!c.satisfies_cocycle_identity()) throw HypothesisNotMet("cochain is not a cocycle");
    const auto& m = *c.module();
    const auto& g = *m.group();
    const std::uint32_t p = m.p();
    const std::size_t d = m.dim();
    const auto tree = spanning_tree(g);
    const auto id = fp::Matrix::identity(p, d);

    if (c.degree() == 1) {
        // A cocycle is determined by its generator values.
        if (tree.gens.empty()) return true;
        fp::Matrix a(p, tree.gens.size() * d, d);
        fp::Vec rhs(tree.gens.size() * d);
        for (std::size_t si = 0; si < tree.gens.size(); ++si) {
            const auto diff = m.action(tree.gens[si]) - id;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) a(si * d + i, j) = diff(i, j);
                rhs[si * d + i] = c.value(tree.gens[si])[i];
            }
        }
        return fp::solve(a, rhs).has_value();
    }

    if (g.order() > kH2MaxOrder)
        throw GroupTooLarge("2-coboundary decisions are capped at order " +
                            std::to_string(kH2MaxOrder));
    // Normalize: subtract the coboundary of the constant cochain f(1,1).
    CohomologyClass f = c;
    const int e = g.identity();
    if (!c.is_normalized()) {
        const fp::Vec c0(c.value(e, e).begin(), c.value(e, e).end());
        const std::size_t n = g.order();
        fp::Vec shift(n * n * d, 0);
        for (std::size_t x = 0; x < n; ++x) {
            const auto gc = m.action(static_cast<int>(x)) * c0;
            for (std::size_t y = 0; y < n; ++y)
                std::copy(gc.begin(), gc.end(), shift.begin() + static_cast<long>((x * n + y) * d));
        }
        f = c - CohomologyClass(2, c.module(), std::move(shift));
    }
    if (tree.gens.empty()) return f.is_zero_cochain();

    // Unknowns phi(h), h != 1. Rows: (delta phi)(s, h) = s.phi(h) - phi(sh) + phi(s).
    const auto n = static_cast<int>(g.order());
    std::vector<int> slot(g.order(), -1);
    int next = 0;
    for (int h = 0; h < n; ++h)
        if (h != e) slot[h] = next++;
    const std::size_t unknowns = static_cast<std::size_t>(next) * d;
    fp::Matrix a(p, tree.gens.size() * g.order() * d, unknowns);
    fp::Vec rhs(a.rows());
    std::size_t row = 0;
    for (int s : tree.gens)
        for (int h = 0; h < n; ++h) {
            const auto& act = m.action(s);
            for (std::size_t i = 0; i < d; ++i, ++row) {
                if (slot[h] >= 0)
                    for (std::size_t j = 0; j < d; ++j)
                        a(row, static_cast<std::size_t>(slot[h]) * d + j) = act(i, j);
                const int sh = g.mul(s, h);
                if (slot[sh] >= 0) {
                    auto& cell = a(row, static_cast<std::size_t>(slot[sh]) * d + i);
                    cell = (cell + p - 1) % p;
                }
                if (slot[s] >= 0) {
                    auto& cell = a(row, static_cast<std::size_t>(slot[s]) * d + i);
                    cell = (cell + 1) % p;
                }
                rhs[row] = f.value(s, h)[i];
            }
        }
    return fp::solve(a, rhs).has_value();
}

bool same_class(const CohomologyClass& a, const CohomologyClass& b) {
    return is_coboundary(a - b);
}

// ---------------------------------------------------------------------------
// H^1, H^2

CohomologyGroup h1(const ModulePtr& m) {
    const auto z = z1_data(*m);
    CohomologyGroup out;
    out.cocycle_dim = z.cocycles.size();
    fp::RowBasis classes(m->p(), z.vars);
    for (const auto& b : z.coboundaries) classes.insert(b);
    out.coboundary_dim = classes.rank();
    for (const auto& x : z.cocycles)
        if (classes.insert(x)) out.basis.emplace_back(1, m, expand1(z, *m, x));
    out.dim = out.basis.size();
    return out;
}

CohomologyClass random_cocycle(const ModulePtr& m, std::mt19937_64& rng) {
    const auto z = z1_data(*m);
    std::uniform_int_distribution<fp::Elem> coef(0, m->p() - 1);
    fp::Vec x(z.vars, 0);
    for (const auto& b : z.cocycles) fp::axpy(x, coef(rng), b, m->p());
    return CohomologyClass(1, m, expand1(z, *m, x));
}

CohomologyClass coboundary1(const ModulePtr& m, const fp::Vec& v) {
    const std::size_t n = m->group()->order();
    const std::size_t d = m->dim();
    const auto id = fp::Matrix::identity(m->p(), d);
    fp::Vec f(n * d);
    for (std::size_t g = 0; g < n; ++g) {
        const auto w = (m->action(static_cast<int>(g)) - id) * std::span<const fp::Elem>(v);
        std::copy(w.begin(), w.end(), f.begin() + static_cast<long>(g * d));
    }
    return CohomologyClass(1, m, std::move(f));
}

CohomologyGroup h2_small(const ModulePtr& m) {
    const auto& g = *m->group();
    if (g.order() > kH2MaxOrder)
        throw GroupTooLarge("h2_small supports groups of order <= " + std::to_string(kH2MaxOrder) +
                            ", got " + std::to_string(g.order()));
    const std::uint32_t p = m->p();
    const std::size_t d = m->dim();
    const std::size_t n = g.order();
    const int e = g.identity();
    const auto tree = spanning_tree(g);
    const std::size_t k = tree.gens.size();

    std::vector<int> slot(n, -1);
    int next = 0;
    for (int h = 0; h < static_cast<int>(n); ++h)
        if (h != e) slot[h] = next++;
    const std::size_t per_gen = static_cast<std::size_t>(next) * d;
    const std::size_t vars = k * per_gen;

    // Unknown u(s, x) = f(s, x) for x != 1; u(s, 1) = 0.
    auto add_unknown = [&](fp::Matrix& t, std::size_t si, int x, bool negate) {
        if (slot[x] < 0) return;
        const std::size_t base = si * per_gen + static_cast<std::size_t>(slot[x]) * d;
        for (std::size_t i = 0; i < d; ++i) {
            auto& cell = t(i, base + i);
            cell = negate ? (cell + p - 1) % p : (cell + 1) % p;
        }
    };

    // T[g*n + x] expresses f(g, x) as a d x vars matrix.
    std::vector<fp::Matrix> T(n * n, fp::Matrix(p, d, vars));
    std::vector<bool> done(n, false);
    done[e] = true;
    fp::RowBasis conditions(p, vars);
    for (int h : tree.bfs)
        for (std::size_t si = 0; si < k; ++si) {
            const int s = tree.gens[si];
            const int sh = g.mul(s, h);
            const bool tree_edge = is_tree_edge(tree, static_cast<int>(si), h, sh);
            for (int x = 0; x < static_cast<int>(n); ++x) {
                // s.f(h, x) + f(s, hx) - f(s, h)
                fp::Matrix rhs = m->action(s) * T[static_cast<std::size_t>(h) * n + x];
                add_unknown(rhs, si, g.mul(h, x), false);
                add_unknown(rhs, si, h, true);
                auto& target = T[static_cast<std::size_t>(sh) * n + x];
                if (tree_edge) {
                    target = std::move(rhs);
                } else {
                    const auto diff = target - rhs;
                    for (std::size_t r = 0; r < d; ++r)
                        conditions.insert(fp::Vec(diff.row(r).begin(), diff.row(r).end()));
                }
            }
        }
    const auto cocycles = conditions.null_space();

    // Coboundaries of normalized 1-cochains phi, expressed in unknown coordinates.
    fp::RowBasis classes(p, vars);
    for (int h = 0; h < static_cast<int>(n); ++h) {
        if (h == e) continue;
        for (std::size_t j = 0; j < d; ++j) {
            // phi = e_j at h, zero elsewhere.
            fp::Vec u(vars, 0);
            for (std::size_t si = 0; si < k; ++si) {
                const int s = tree.gens[si];
                for (int x = 0; x < static_cast<int>(n); ++x) {
                    if (slot[x] < 0) continue;
                    const std::size_t base = si * per_gen + static_cast<std::size_t>(slot[x]) * d;
                    // s.phi(x) - phi(sx) + phi(s)
                    if (x == h)
                        for (std::size_t i = 0; i < d; ++i)
                            u[base + i] = (u[base + i] + m->action(s)(i, j)) % p;
                    if (g.mul(s, x) == h) u[base + j] = (u[base + j] + p - 1) % p;
                    if (s == h) u[base + j] = (u[base + j] + 1) % p;
                }
            }
            classes.insert(std::move(u));
        }
    }

    CohomologyGroup out;
    out.cocycle_dim = cocycles.size();
    out.coboundary_dim = classes.rank();
    for (const auto& z : cocycles) {
        if (!classes.insert(z)) continue;
        fp::Vec table(n * n * d, 0);
        for (std::size_t idx = 0; idx < n * n; ++idx) {
            const auto v = T[idx] * std::span<const fp::Elem>(z);
            std::copy(v.begin(), v.end(), table.begin() + static_cast<long>(idx * d));
        }
        out.basis.emplace_back(2, m, std::move(table));
    }
    out.dim = out.basis.size();
    return out;
}

std::size_t cyclic_h1(const GModule& m) {
    const auto& g = *m.group();
    const int sigma = cyclic_generator(g);
    const std::size_t d = m.dim();
    const auto id = fp::Matrix::identity(m.p(), d);
    fp::Matrix norm(m.p(), d, d);
    for (int x = g.identity(), i = 0; i < static_cast<int>(g.order()); ++i, x = g.mul(x, sigma))
        norm = norm + m.action(x);
    const std::size_t ker_norm = d - fp::rank(norm);
    const std::size_t im_sigma = fp::rank(m.action(sigma) - id);
    return ker_norm - im_sigma;
}

std::size_t cyclic_h2(const GModule& m) {
    const auto& g = *m.group();
    const int sigma = cyclic_generator(g);
    const std::size_t d = m.dim();
    const auto id = fp::Matrix::identity(m.p(), d);
    fp::Matrix norm(m.p(), d, d);
    for (int x = g.identity(), i = 0; i < static_cast<int>(g.order()); ++i, x = g.mul(x, sigma))
        norm = norm + m.action(x);
    const std::size_t invariants = d - fp::rank(m.action(sigma) - id);
    return invariants - fp::rank(norm);
}

// ---------------------------------------------------------------------------
// Maps

CohomologyClass restriction(const CohomologyClass& c, const grp::Embedded& sub) {
    const auto& m = *c.module();
    for (int x : sub.inclusion)
        if (x < 0 || static_cast<std::size_t>(x) >= m.group()->order())
            throw NotSubgroup("inclusion leaves the ambient group");
    std::vector<bool> hit(m.group()->order(), false);
    for (int x : sub.inclusion) {
        if (hit[x]) throw NotSubgroup("inclusion is not injective");
        hit[x] = true;
    }
    auto res_module = restrict_module(m, sub);
    const std::size_t d = m.dim();
    const std::size_t nh = sub.group->order();
    fp::Vec out;
    if (c.degree() == 1) {
        out.reserve(nh * d);
        for (int x : sub.inclusion) out.insert(out.end(), c.value(x).begin(), c.value(x).end());
    } else {
        out.reserve(nh * nh * d);
        for (int x : sub.inclusion)
            for (int y : sub.inclusion)
                out.insert(out.end(), c.value(x, y).begin(), c.value(x, y).end());
    }
    return CohomologyClass(c.degree(), std::move(res_module), std::move(out));
}

CohomologyClass restriction(const CohomologyClass& c, const grp::MatGroup& sub,
                            const grp::MatGroup& ambient) {
    if (!c.module()->group()->same_table(*ambient.table()))
        throw GroupMismatch("class does not live over the ambient group");
    return restriction(c, grp::Embedded{sub.table(), grp::inclusion(sub, ambient)});
}

CohomologyClass inflation(const CohomologyClass& c, const grp::Hom& projection,
                          const ModulePtr& target, const fp::Matrix& embedding) {
    const auto& src = *c.module();
    const auto& g = *target->group();
    const auto& q = *src.group();
    if (projection.size() != g.order()) throw DimensionMismatch("projection size");
    grp::check_homomorphism(g, q, projection);
    if (!grp::is_surjective(q, projection)) throw NotSurjective("projection is not onto");
    if (embedding.rows() != target->dim() || embedding.cols() != src.dim())
        throw DimensionMismatch("coefficient embedding shape");
    for (std::size_t x = 0; x < g.order(); ++x)
        if (!(target->action(static_cast<int>(x)) * embedding ==
              embedding * src.action(projection[x])))
            throw GroupMismatch("coefficients are not fixed by the kernel of the projection");
    const std::size_t n = g.order();
    const std::size_t d = target->dim();
    fp::Vec out;
    if (c.degree() == 1) {
        out.resize(n * d);
        for (std::size_t x = 0; x < n; ++x) {
            const auto v = embedding * c.value(projection[x]);
            std::copy(v.begin(), v.end(), out.begin() + static_cast<long>(x * d));
        }
    } else {
        out.resize(n * n * d);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const auto v = embedding * c.value(projection[x], projection[y]);
                std::copy(v.begin(), v.end(), out.begin() + static_cast<long>((x * n + y) * d));
            }
    }
    return CohomologyClass(c.degree(), target, std::move(out));
}

CohomologyClass map_coefficients(const CohomologyClass& c, const fp::Matrix& map,
                                 const ModulePtr& target) {
    const auto& src = *c.module();
    require_same_module_group(src, *target);
    if (map.rows() != target->dim() || map.cols() != src.dim())
        throw DimensionMismatch("coefficient map shape");
    const std::size_t n = src.group()->order();
    for (std::size_t x = 0; x < n; ++x)
        if (!(target->action(static_cast<int>(x)) * map == map * src.action(static_cast<int>(x))))
            throw GroupMismatch("coefficient map is not equivariant");
    const std::size_t cells = c.degree() == 1 ? n : n * n;
    const std::size_t ds = src.dim();
    const std::size_t dt = target->dim();
    fp::Vec out(cells * dt);
    for (std::size_t i = 0; i < cells; ++i) {
        const auto v = map * std::span<const fp::Elem>(c.values().data() + i * ds, ds);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<long>(i * dt));
    }
    return CohomologyClass(c.degree(), target, std::move(out));
}

fp::Matrix swap_matrix(std::uint32_t p, std::size_t dim_a, std::size_t dim_b) {
    // (b_j (x) a_i) at index j*dim_a + i  ->  (a_i (x) b_j) at index i*dim_b + j
    fp::Matrix s(p, dim_a * dim_b, dim_a * dim_b);
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) s(i * dim_b + j, j * dim_a + i) = 1;
    return s;
}

CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b, const ModulePtr& ab) {
    if (a.degree() != 1 || b.degree() != 1)
        throw Unsupported("cup is implemented for degree 1 x degree 1");
    const auto& ma = *a.module();
    const auto& mb = *b.module();
    require_same_module_group(ma, mb);
    require_same_module_group(ma, *ab);
    if (ab->dim() != ma.dim() * mb.dim()) throw DimensionMismatch("tensor module dimension");
    const std::uint32_t p = ma.p();
    const std::size_t n = ma.group()->order();
    const std::size_t da = ma.dim();
    const std::size_t db = mb.dim();
    fp::Vec out(n * n * da * db, 0);
    for (std::size_t g = 0; g < n; ++g) {
        const auto ag = a.value(static_cast<int>(g));
        for (std::size_t h = 0; h < n; ++h) {
            const auto gb = mb.action(static_cast<int>(g)) * b.value(static_cast<int>(h));
            const std::size_t base = (g * n + h) * da * db;
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t j = 0; j < db; ++j)
                    out[base + i * db + j] =
                        static_cast<fp::Elem>(static_cast<std::uint64_t>(ag[i]) * gb[j] % p);
        }
    }
    return CohomologyClass(2, ab, std::move(out));
}

CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) {
    return cup(a, b, tensor(*a.module(), *b.module()));
}

bool restriction_injective(const ModulePtr& m, const grp::Embedded& sub) {
    const auto classes = h1(m);
    if (classes.dim == 0) return true;
    auto res_module = restrict_module(*m, sub);
    fp::RowBasis span(m->p(), sub.group->order() * m->dim());
    for (auto& b : coboundary_tables(*res_module)) span.insert(std::move(b));
    for (const auto& c : classes.basis)
        if (!span.insert(restriction(c, sub).values())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Sha^1

ShaResult sha1(const ModulePtr& m) {
    const auto& g = *m->group();
    const std::uint32_t p = m->p();
    const std::size_t d = m->dim();
    const auto z = z1_data(*m);
    const auto id = fp::Matrix::identity(p, d);
    const auto cyclics = grp::cyclic_subgroups(g);

    ShaResult out;
    out.cyclic_count = cyclics.size();

    // Z^1 basis as the columns of Zb (vars x k); coordinates a in F_p^k.
    const std::size_t k = z.cocycles.size();
    fp::RowBasis conditions(p, k);
    if (k > 0) {
        const auto zb = fp::Matrix::from_columns(p, z.vars, z.cocycles);
        for (const auto& c : cyclics) {
            // f|C is a coboundary iff f(c) lies in im(c - 1), i.e. is killed by
            // every linear form vanishing on that image.
            const auto forms = fp::kernel_basis((m->action(c.generator) - id).transpose());
            if (forms.empty()) continue;
            const auto lz = z.L[c.generator] * zb;  // d x k
            for (const auto& q : forms) {
                fp::Vec row(k, 0);
                for (std::size_t i = 0; i < d; ++i)
                    if (q[i] != 0) fp::axpy(row, q[i], lz.row(i), p);
                conditions.insert(std::move(row));
            }
        }
    }
    const auto kernel = conditions.null_space();

    fp::RowBasis classes(p, z.vars);
    for (const auto& b : z.coboundaries) classes.insert(b);
    const std::size_t b1 = classes.rank();
    std::size_t h1_dim = 0;
    {
        fp::RowBasis all = classes;
        for (const auto& x : z.cocycles)
            if (all.insert(x)) ++h1_dim;
    }
    out.h1_dim = h1_dim;
    for (const auto& a : kernel) {
        fp::Vec x(z.vars, 0);
        for (std::size_t i = 0; i < k; ++i)
            if (a[i] != 0) fp::axpy(x, a[i], z.cocycles[i], p);
        if (classes.insert(x)) out.basis.emplace_back(1, m, expand1(z, *m, x));
    }
    out.sha_dim = out.basis.size();
    (void)b1;
    return out;
}

// ---------------------------------------------------------------------------
// Checks

SerreReport serre_restriction_check(std::uint32_t p, ModuleKind kind) {
    if (p != 3 && p != 5) throw Unsupported("serre check supports p in {3, 5}");
    const auto sl2 = grp::special_linear(p);
    const auto b = grp::borel_special(p);
    const auto syl = grp::sylow_p(sl2);
    const auto m = build_module(kind, sl2);

    SerreReport r{p, kind};
    r.h1_sl2 = h1(m).dim;
    const grp::Embedded to_b{b.table(), grp::inclusion(b, sl2)};
    const grp::Embedded to_syl{syl.table(), grp::inclusion(syl, sl2)};
    r.h1_borel = h1(restrict_module(*m, to_b)).dim;
    r.h1_sylow = h1(restrict_module(*m, to_syl)).dim;
    r.injective = restriction_injective(m, to_b);
    r.sylow_injective = restriction_injective(m, to_syl);
    return r;
}

ExactnessReport inf_res_exactness_check(const grp::MatGroup& g, const grp::MatGroup& normal,
                                        const ModulePtr& m) {
    if (!m->group()->same_table(*g.table()))
        throw GroupMismatch("module does not live over the given group");
    const auto n_ids = grp::ids_in(normal, g);
    if (!grp::is_normal(*g.table(), n_ids)) throw NotNormal("subgroup is not normal");
    const std::uint32_t p = m->p();
    const std::size_t d = m->dim();

    const grp::Embedded to_n{normal.table(), n_ids};
    const auto m_n = restrict_module(*m, to_n);
    const auto q = grp::quotient(*g.table(), n_ids);

    // M^N as a module over G/N: columns of `fixed` are a basis of M^N.
    const auto fixed_basis = h0(*m_n);
    const std::size_t f = fixed_basis.size();
    ExactnessReport r;
    const auto classes_g = h1(m);
    r.h1_group = classes_g.dim;
    r.h1_normal = h1(m_n).dim;

    fp::RowBasis cob_g(p, g.order() * d);
    for (auto& b : coboundary_tables(*m)) cob_g.insert(std::move(b));

    std::vector<CohomologyClass> inflated;
    if (f > 0) {
        const auto fixed = fp::Matrix::from_columns(p, d, fixed_basis);
        std::vector<int> rep(q.group->order(), -1);
        for (std::size_t x = 0; x < g.order(); ++x)
            if (rep[q.projection[x]] < 0) rep[q.projection[x]] = static_cast<int>(x);
        std::vector<fp::Matrix> act;
        for (int x : rep) {
            // Solve fixed * B = action(x) * fixed column by column.
            const auto image = m->action(x) * fixed;
            fp::Matrix bq(p, f, f);
            for (std::size_t col = 0; col < f; ++col) {
                auto sol = fp::solve(fixed, image.column(col));
                if (!sol) throw NotNormal("M^N is not stable under G");
                for (std::size_t i = 0; i < f; ++i) bq(i, col) = (*sol)[i];
            }
            act.push_back(std::move(bq));
        }
        auto mq = std::make_shared<const GModule>(q.group, p, f, std::move(act),
                                                  m->name() + "^N");
        const auto classes_q = h1(mq);
        r.h1_quotient = classes_q.dim;
        for (const auto& c : classes_q.basis) inflated.push_back(inflation(c, q.projection, m, fixed));
    }

    // Injectivity of inflation on classes.
    {
        fp::RowBasis span = cob_g;
        std::size_t independent = 0;
        for (const auto& c : inflated)
            if (span.insert(c.values())) ++independent;
        r.image_inflation = independent;
        r.inflation_injective = independent == r.h1_quotient;
    }
    r.image_in_kernel = std::all_of(inflated.begin(), inflated.end(), [&](const auto& c) {
        return is_coboundary(restriction(c, to_n));
    });

    // Kernel of restriction: cocycles of G whose restriction to N is a coboundary.
    {
        const auto z = z1_data(*m);
        fp::RowBasis cob_n(p, normal.order() * d);
        for (auto& b : coboundary_tables(*m_n)) cob_n.insert(std::move(b));
        std::vector<fp::Vec> residues;
        for (const auto& x : z.cocycles) {
            const CohomologyClass c(1, m, expand1(z, *m, x));
            residues.push_back(cob_n.reduce(restriction(c, to_n).values()));
        }
        std::size_t kernel_dim = 0;
        if (!residues.empty()) {
            const auto mat = fp::Matrix::from_columns(p, normal.order() * d, residues);
            kernel_dim = z.cocycles.size() - fp::rank(mat);
        }
        // B^1(G) lies inside that kernel.
        fp::RowBasis b1(p, z.vars);
        for (const auto& b : z.coboundaries) b1.insert(b);
        r.kernel_restriction = kernel_dim - b1.rank();
    }
    r.exact = r.inflation_injective && r.image_in_kernel &&
              r.image_inflation == r.kernel_restriction;
    return r;
}

}  // namespace hasse::coh
