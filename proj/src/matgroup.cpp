#include "hasse/matgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hasse/error.hpp"

namespace hasse::grp {

namespace {

fp::Elem primitive_root(std::uint32_t p) {
    for (fp::Elem g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint32_t q = 2; q < p && ok; ++q)
            if ((p - 1) % q == 0 && fp::is_prime(q) && fp::pow_mod(g, (p - 1) / q, p) == 1)
                ok = false;
        if (ok) return g;
    }
    return 1;  // p = 2 is rejected before this point
}

fp::Elem smallest_nonresidue(std::uint32_t p) {
    for (fp::Elem e = 2; e < p; ++e)
        if (fp::pow_mod(e, (p - 1) / 2, p) == p - 1) return e;
    return 0;
}

}  // namespace

Mat2 make_mat2(std::uint32_t p, long long a, long long b, long long c, long long d) {
    return {fp::reduce(a, p), fp::reduce(b, p), fp::reduce(c, p), fp::reduce(d, p)};
}

Mat2 mul(const Mat2& x, const Mat2& y, std::uint32_t p) {
    return {(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p,
            (x.c * y.a + x.d * y.c) % p, (x.c * y.b + x.d * y.d) % p};
}

fp::Elem det(const Mat2& x, std::uint32_t p) { return (x.a * x.d + p * p - x.b * x.c) % p; }

Mat2 inverse(const Mat2& x, std::uint32_t p) {
    const fp::Elem di = fp::inv_mod(det(x, p), p);
    return {x.d * di % p, (p - x.b) * di % p, (p - x.c) * di % p, x.a * di % p};
}

std::uint32_t encode(const Mat2& x, std::uint32_t p) {
    return ((x.a * p + x.b) * p + x.c) * p + x.d;
}

fp::Matrix to_matrix(const Mat2& x, std::uint32_t p) {
    return fp::Matrix::from_rows(p, {{x.a, x.b}, {x.c, x.d}});
}

std::string to_string(const Mat2& x) {
    std::ostringstream os;
    os << x.a << ',' << x.b << ',' << x.c << ',' << x.d;
    return os.str();
}

Mat2 parse_mat2(const std::string& text, std::uint32_t p) {
    std::vector<long long> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw ParseError("trailing characters in '" + item + "'");
        } catch (const std::logic_error&) {
            throw ParseError("not an integer: '" + item + "'");
        }
    }
    if (v.size() != 4) throw ParseError("expected a,b,c,d but got '" + text + "'");
    return make_mat2(p, v[0], v[1], v[2], v[3]);
}

std::uint64_t gl2_order(std::uint32_t p) {
    const std::uint64_t q = p;
    return q * (q - 1) * (q - 1) * (q + 1);
}

MatGroup::MatGroup(std::uint32_t p, std::vector<Mat2> elements, std::vector<Mat2> generators)
    : p_(p), elements_(std::move(elements)), generators_(std::move(generators)) {
    fp::check_modulus(p);
    std::sort(elements_.begin(), elements_.end(), [p](const Mat2& x, const Mat2& y) {
        return encode(x, p) < encode(y, p);
    });
    codes_.reserve(elements_.size());
    for (const auto& x : elements_) codes_.push_back(encode(x, p));

    const std::size_t n = elements_.size();
    std::vector<int> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto id = find(mul(elements_[i], elements_[j], p));
            if (!id) throw NotSubgroup("element table is not closed under multiplication");
            table[i * n + j] = *id;
        }
    std::vector<int> gen_ids;
    for (const auto& g : generators_) {
        auto id = find(g);
        if (!id) throw NotSubgroup("generator outside element table");
        gen_ids.push_back(*id);
    }
    table_ = std::make_shared<const FiniteGroup>(n, std::move(table), std::move(gen_ids));
}

std::optional<int> MatGroup::find(const Mat2& x) const {
    const auto code = encode(x, p_);
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return std::nullopt;
    return static_cast<int>(it - codes_.begin());
}

bool MatGroup::contains(const MatGroup& h) const {
    return h.p_ == p_ && std::all_of(h.elements_.begin(), h.elements_.end(),
                                     [this](const Mat2& x) { return contains(x); });
}

MatGroup close_subgroup(std::uint32_t p, std::span<const Mat2> gens) {
    fp::check_modulus(p);
    std::vector<Mat2> clean;
    for (const auto& raw : gens) {
        const Mat2 g = make_mat2(p, raw.a, raw.b, raw.c, raw.d);
        if (det(g, p) == 0)
            throw NonInvertibleGenerator("generator " + to_string(g) + " is singular mod " +
                                         std::to_string(p));
        if (g == Mat2{}) continue;
        if (std::find(clean.begin(), clean.end(), g) == clean.end()) clean.push_back(g);
    }
    std::vector<Mat2> elems{Mat2{}};
    std::unordered_set<std::uint32_t> seen{encode(Mat2{}, p)};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& s : clean) {
            const Mat2 y = mul(s, elems[i], p);
            if (seen.insert(encode(y, p)).second) elems.push_back(y);
        }
    return MatGroup(p, std::move(elems), std::move(clean));
}

MatGroup borel(std::uint32_t p) {
    const auto g = primitive_root(p);
    const std::vector<Mat2> gens{make_mat2(p, g, 0, 0, 1), make_mat2(p, 1, 0, 0, g),
                                 make_mat2(p, 1, 1, 0, 1)};
    return close_subgroup(p, gens);
}

MatGroup split_torus(std::uint32_t p) {
    const auto g = primitive_root(p);
    const std::vector<Mat2> gens{make_mat2(p, g, 0, 0, 1), make_mat2(p, 1, 0, 0, g)};
    return close_subgroup(p, gens);
}

MatGroup unipotent(std::uint32_t p) {
    const std::vector<Mat2> gens{make_mat2(p, 1, 1, 0, 1)};
    return close_subgroup(p, gens);
}

MatGroup nonsplit_torus(std::uint32_t p) {
    fp::check_modulus(p);
    const fp::Elem eps = smallest_nonresidue(p);
    // a + b*sqrt(eps) acting on the basis {1, sqrt(eps)}: [[a, eps*b], [b, a]].
    std::vector<Mat2> elems;
    for (fp::Elem a = 0; a < p; ++a)
        for (fp::Elem b = 0; b < p; ++b)
            if (a != 0 || b != 0) elems.push_back(make_mat2(p, a, eps * b, b, a));
    const std::uint64_t order = static_cast<std::uint64_t>(p) * p - 1;
    Mat2 gen{};
    for (const auto& x : elems) {
        std::uint64_t k = 1;
        for (Mat2 y = x; !(y == Mat2{}); y = mul(y, x, p)) ++k;
        if (k == order) {
            gen = x;
            break;
        }
    }
    return MatGroup(p, std::move(elems), {gen});
}

MatGroup special_linear(std::uint32_t p) {
    const std::vector<Mat2> gens{make_mat2(p, 1, 1, 0, 1), make_mat2(p, 0, -1, 1, 0)};
    return close_subgroup(p, gens);
}

MatGroup general_linear(std::uint32_t p) {
    const auto g = primitive_root(p);
    const std::vector<Mat2> gens{make_mat2(p, 1, 1, 0, 1), make_mat2(p, 0, -1, 1, 0),
                                 make_mat2(p, g, 0, 0, 1)};
    return close_subgroup(p, gens);
}

MatGroup borel_special(std::uint32_t p) {
    const auto g = primitive_root(p);
    const std::vector<Mat2> gens{make_mat2(p, 1, 1, 0, 1),
                                 make_mat2(p, g, 0, 0, fp::inv_mod(g, p))};
    return close_subgroup(p, gens);
}

std::vector<int> ids_in(const MatGroup& h, const MatGroup& ambient) {
    if (h.p() != ambient.p()) throw NotSubgroup("different primes");
    std::vector<int> ids;
    ids.reserve(h.order());
    for (const auto& x : h.elements()) {
        auto id = ambient.find(x);
        if (!id) throw NotSubgroup(to_string(x) + " is not in the ambient group");
        ids.push_back(*id);
    }
    return ids;
}

Hom inclusion(const MatGroup& sub, const MatGroup& ambient) { return ids_in(sub, ambient); }

MatGroup conjugate(const MatGroup& g, const Mat2& c) {
    const auto p = g.p();
    const Mat2 ci = inverse(c, p);
    std::vector<Mat2> elems, gens;
    for (const auto& x : g.elements()) elems.push_back(mul(mul(c, x, p), ci, p));
    for (const auto& x : g.generators()) gens.push_back(mul(mul(c, x, p), ci, p));
    return MatGroup(p, std::move(elems), std::move(gens));
}

std::vector<MatGroup> enumerate_cyclic_subgroups(const MatGroup& g) {
    std::vector<MatGroup> out;
    for (const auto& c : cyclic_subgroups(*g.table())) {
        const Mat2 gen = g.element(c.generator);
        std::vector<Mat2> elems;
        for (int id : c.elements) elems.push_back(g.element(id));
        std::vector<Mat2> gens;
        if (!(gen == Mat2{})) gens.push_back(gen);
        out.emplace_back(g.p(), std::move(elems), std::move(gens));
    }
    return out;
}

MatGroup sylow_p(const MatGroup& g) {
    const auto p = g.p();
    // |GL_2(F_p)| has p-part exactly p, so a Sylow p-subgroup is trivial or
    // generated by any element of order p.
    if (g.order() % p == 0) {
        const auto& t = *g.table();
        for (int x = 0; x < static_cast<int>(g.order()); ++x)
            if (t.element_order(x) == static_cast<int>(p)) {
                const std::vector<Mat2> gens{g.element(x)};
                return close_subgroup(p, gens);
            }
    }
    return close_subgroup(p, {});
}

std::vector<MatGroup> enumerate_subgroups(const MatGroup& ambient) {
    const auto p = ambient.p();
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<MatGroup> found;
    std::deque<std::size_t> queue;

    auto admit = [&](MatGroup h) {
        if (seen.insert(h.codes()).second) {
            found.push_back(std::move(h));
            queue.push_back(found.size() - 1);
        }
    };
    admit(close_subgroup(p, {}));
    while (!queue.empty()) {
        const std::size_t idx = queue.front();
        queue.pop_front();
        for (const auto& x : ambient.elements()) {
            if (found[idx].contains(x)) continue;
            std::vector<Mat2> gens = found[idx].generators();
            gens.push_back(x);
            admit(close_subgroup(p, gens));
        }
    }
    std::sort(found.begin(), found.end(), [](const MatGroup& a, const MatGroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.codes() < b.codes();
    });
    return found;
}

std::vector<MatGroup> enumerate_all_subgroups(std::uint32_t p) {
    if (p != 3)
        throw Unsupported("exhaustive subgroup enumeration is only offered for p = 3");
    return enumerate_subgroups(general_linear(p));
}

bool is_upper_triangular(const Mat2& x) { return x.c == 0; }

std::optional<Mat2> borel_conjugator(const MatGroup& g) {
    const auto p = g.p();
    // Lines of F_p^2 spanned by (1, t) and (0, 1); e_1 comes first so that
    // subgroups of B get the identity witness.
    for (std::uint32_t t = 0; t <= p; ++t) {
        const fp::Elem v0 = t < p ? 1 : 0;
        const fp::Elem v1 = t < p ? t : 1;
        bool invariant = true;
        for (const auto& s : g.generators()) {
            const fp::Elem w0 = (s.a * v0 + s.b * v1) % p;
            const fp::Elem w1 = (s.c * v0 + s.d * v1) % p;
            if ((w0 * v1 + p * p - w1 * v0) % p != 0) {
                invariant = false;
                break;
            }
        }
        if (!invariant) continue;
        // Columns (v, w) with w completing v to a basis; witness is C^-1.
        const Mat2 c = t < p ? make_mat2(p, v0, 0, v1, 1) : make_mat2(p, 0, 1, 1, 0);
        return inverse(c, p);
    }
    return std::nullopt;
}

bool contains_sl2(const MatGroup& g) {
    const auto p = g.p();
    const std::vector<Mat2> gens{make_mat2(p, 1, 1, 0, 1), make_mat2(p, 1, 0, 1, 1)};
    const auto sl2 = close_subgroup(p, gens);
    return g.contains(sl2);
}

Dichotomy classify_dichotomy(const MatGroup& g) {
    if (g.order() % g.p() != 0)
        throw HypothesisNotMet("group order " + std::to_string(g.order()) +
                               " is prime to p = " + std::to_string(g.p()));
    Dichotomy d{Dichotomy::Kind::Inconsistent, borel_conjugator(g), contains_sl2(g)};
    if (d.witness && !d.contains_sl2)
        d.kind = Dichotomy::Kind::BorelConjugate;
    else if (!d.witness && d.contains_sl2)
        d.kind = Dichotomy::Kind::ContainsSL2;
    return d;
}

Mat2 random_gl2(std::uint32_t p, std::mt19937_64& rng) {
    // Plain modular reduction keeps the stream identical across standard libraries.
    auto draw = [&] { return static_cast<fp::Elem>(rng() % p); };
    for (;;) {
        Mat2 x{draw(), draw(), draw(), draw()};
        if (det(x, p) != 0) return x;
    }
}

}  // namespace hasse::grp
