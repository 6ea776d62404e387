#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "hasse/error.hpp"
#include "hasse/matgroup.hpp"

namespace hasse::grp {

FiniteGroup::FiniteGroup(std::size_t order, std::vector<int> table, std::vector<int> generators)
    : n_(order), table_(std::move(table)), inverse_(order, -1), generators_(std::move(generators)) {
    if (n_ == 0 || table_.size() != n_ * n_)
        throw DimensionMismatch("Cayley table must be order x order");
    identity_ = -1;
    for (std::size_t e = 0; e < n_ && identity_ < 0; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n_ && ok; ++x)
            ok = mul(static_cast<int>(e), static_cast<int>(x)) == static_cast<int>(x);
        if (ok) identity_ = static_cast<int>(e);
    }
    if (identity_ < 0) throw NotSubgroup("table has no identity element");
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
            if (mul(static_cast<int>(a), static_cast<int>(b)) == identity_) {
                inverse_[a] = static_cast<int>(b);
                break;
            }
    if (std::find(inverse_.begin(), inverse_.end(), -1) != inverse_.end())
        throw NotSubgroup("table is missing inverses");
}

int FiniteGroup::element_order(int a) const {
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
}

std::vector<int> FiniteGroup::cyclic_closure(int a) const {
    std::vector<int> out{identity_};
    for (int x = a; x != identity_; x = mul(x, a)) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

void check_homomorphism(const FiniteGroup& domain, const FiniteGroup& codomain, const Hom& h) {
    if (h.size() != domain.order()) throw NotHomomorphism("map size differs from domain order");
    for (int img : h)
        if (img < 0 || static_cast<std::size_t>(img) >= codomain.order())
            throw NotHomomorphism("image id out of range");
    const auto n = static_cast<int>(domain.order());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (h[domain.mul(a, b)] != codomain.mul(h[a], h[b]))
                throw NotHomomorphism("map does not respect multiplication");
}

bool is_surjective(const FiniteGroup& codomain, const Hom& h) {
    std::vector<bool> hit(codomain.order(), false);
    for (int x : h) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<CyclicSubgroup> cyclic_subgroups(const FiniteGroup& g) {
    std::vector<CyclicSubgroup> out;
    std::map<std::vector<int>, std::size_t> seen;
    for (int x = 0; x < static_cast<int>(g.order()); ++x) {
        auto elems = g.cyclic_closure(x);
        if (seen.emplace(elems, out.size()).second) out.push_back({x, std::move(elems)});
    }
    return out;
}

bool is_subgroup(const FiniteGroup& g, std::span<const int> ids) {
    std::vector<bool> in(g.order(), false);
    for (int x : ids) in[x] = true;
    if (!in[g.identity()]) return false;
    for (int a : ids) {
        if (!in[g.inv(a)]) return false;
        for (int b : ids)
            if (!in[g.mul(a, b)]) return false;
    }
    return true;
}

bool is_normal(const FiniteGroup& g, std::span<const int> ids) {
    if (!is_subgroup(g, ids)) return false;
    std::vector<bool> in(g.order(), false);
    for (int x : ids) in[x] = true;
    for (int x = 0; x < static_cast<int>(g.order()); ++x)
        for (int n : ids)
            if (!in[g.mul(g.mul(x, n), g.inv(x))]) return false;
    return true;
}

Quotient quotient(const FiniteGroup& g, std::span<const int> normal_ids) {
    if (!is_normal(g, normal_ids)) throw NotNormal("subgroup is not normal");
    const auto n = static_cast<int>(g.order());
    Hom coset(g.order(), -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (coset[x] >= 0) continue;
        const int idx = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int k : normal_ids) coset[g.mul(x, k)] = idx;
    }
    const std::size_t q = reps.size();
    std::vector<int> table(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coset[g.mul(reps[i], reps[j])];
    std::vector<int> gens;
    for (int s : g.generators()) {
        const int c = coset[s];
        if (c != coset[g.identity()] && std::find(gens.begin(), gens.end(), c) == gens.end())
            gens.push_back(c);
    }
    return {std::make_shared<const FiniteGroup>(q, std::move(table), std::move(gens)),
            std::move(coset)};
}

Embedded sub_table(const FiniteGroup& g, std::span<const int> ids) {
    if (!is_subgroup(g, ids)) throw NotSubgroup("ids do not form a subgroup");
    std::vector<int> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> local(g.order(), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<int>(i);
    const std::size_t m = sorted.size();
    std::vector<int> table(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) table[i * m + j] = local[g.mul(sorted[i], sorted[j])];

    // Greedy generating set: add an element whenever it is not yet generated.
    std::vector<int> gens;
    std::vector<bool> covered(m, false);
    covered[local[g.identity()]] = true;
    std::vector<int> span{local[g.identity()]};
    for (std::size_t i = 0; i < m; ++i) {
        if (covered[i]) continue;
        gens.push_back(static_cast<int>(i));
        // re-close under all generators
        span.assign(1, local[g.identity()]);
        std::fill(covered.begin(), covered.end(), false);
        covered[span[0]] = true;
        for (std::size_t k = 0; k < span.size(); ++k)
            for (int s : gens) {
                const int y = table[static_cast<std::size_t>(s) * m + span[k]];
                if (!covered[y]) {
                    covered[y] = true;
                    span.push_back(y);
                }
            }
    }
    return {std::make_shared<const FiniteGroup>(m, std::move(table), std::move(gens)),
            std::move(sorted)};
}

}  // namespace hasse::grp
