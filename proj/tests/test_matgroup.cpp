#include <algorithm>
#include <set>

#include "doctest.h"
#include "hasse/error.hpp"
#include "hasse/matgroup.hpp"

using namespace hasse;
using grp::Mat2;
using grp::MatGroup;

namespace {

// Orbit of repeated multiplication by the generators, no table involved.
std::size_t orbit_order(std::uint32_t p, const std::vector<Mat2>& gens) {
    std::set<std::uint32_t> seen{grp::encode(Mat2{}, p)};
    std::vector<Mat2> frontier{Mat2{}};
    while (!frontier.empty()) {
        std::vector<Mat2> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                const auto y = grp::mul(x, s, p);
                if (seen.insert(grp::encode(y, p)).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

// Subgroup lattice by joining cyclic subgroups pairwise until nothing new appears.
std::size_t lattice_by_joins(const MatGroup& g) {
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<MatGroup> all;
    for (const auto& c : grp::enumerate_cyclic_subgroups(g))
        if (seen.insert(c.codes()).second) all.push_back(c);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<Mat2> gens = all[i].generators();
            gens.insert(gens.end(), all[j].generators().begin(), all[j].generators().end());
            auto h = grp::close_subgroup(g.p(), gens);
            if (seen.insert(h.codes()).second) all.push_back(std::move(h));
        }
    return all.size();
}

bool closed(const MatGroup& g) {
    for (const auto& x : g.elements())
        for (const auto& y : g.elements())
            if (!g.contains(grp::mul(x, y, g.p()))) return false;
    return true;
}

}  // namespace

TEST_CASE("closure orders") {
    const Mat2 u = grp::make_mat2(3, 1, 1, 0, 1);
    const Mat2 w = grp::make_mat2(3, 0, -1, 1, 0);
    CHECK(grp::close_subgroup(3, std::vector<Mat2>{Mat2{}}).order() == 1);
    CHECK(grp::close_subgroup(3, std::vector<Mat2>{u}).order() == 3);
    CHECK(grp::close_subgroup(3, std::vector<Mat2>{u, w}).order() == 24);
    CHECK(orbit_order(3, {u, w}) == 24);
    CHECK_THROWS_AS(grp::close_subgroup(3, std::vector<Mat2>{grp::make_mat2(3, 1, 1, 1, 1)}),
                    NonInvertibleGenerator);
}

TEST_CASE("standard subgroup orders") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const auto q = static_cast<std::size_t>(p);
        CHECK(grp::borel(p).order() == q * (q - 1) * (q - 1));
        CHECK(grp::split_torus(p).order() == (q - 1) * (q - 1));
        CHECK(grp::unipotent(p).order() == q);
        CHECK(grp::nonsplit_torus(p).order() == q * q - 1);
        CHECK(grp::special_linear(p).order() == q * (q * q - 1));
        CHECK(grp::general_linear(p).order() == grp::gl2_order(p));
        CHECK(grp::general_linear(p).order() == orbit_order(p, grp::general_linear(p).generators()));
        CHECK(grp::borel(p).contains(grp::split_torus(p)));
        CHECK(grp::borel(p).contains(grp::borel_special(p)));
    }
    CHECK(grp::borel(3).order() == 12);
    CHECK(grp::split_torus(3).order() == 4);
    CHECK(grp::nonsplit_torus(5).order() == 24);
}

TEST_CASE("cyclic subgroups") {
    CHECK(grp::enumerate_cyclic_subgroups(grp::close_subgroup(3, std::vector<Mat2>{})).size() == 1);
    CHECK(grp::enumerate_cyclic_subgroups(grp::unipotent(3)).size() == 2);
    // brute force over the 24 elements of SL2(F3)
    const auto sl = grp::special_linear(3);
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& x : sl.elements())
        seen.insert(grp::close_subgroup(3, std::vector<Mat2>{x}).codes());
    CHECK(grp::enumerate_cyclic_subgroups(sl).size() == seen.size());
    CHECK(seen.size() == 13);
}

TEST_CASE("sylow subgroups") {
    CHECK(grp::sylow_p(grp::split_torus(3)).order() == 1);
    const auto s3 = grp::sylow_p(grp::general_linear(3));
    CHECK(s3.order() == 3);
    CHECK(grp::borel_conjugator(s3).has_value());
    CHECK(grp::sylow_p(grp::special_linear(5)).order() == 5);
}

TEST_CASE("subgroup lattice of GL2(F3)") {
    const auto gl = grp::general_linear(3);
    const auto subs = grp::enumerate_all_subgroups(3);
    CHECK(subs.size() == lattice_by_joins(gl));
    CHECK(subs.size() == 55);
    CHECK(subs.front().order() == 1);
    CHECK(subs.back() == gl);
    for (const auto& h : subs) CHECK(closed(h));
    CHECK(std::is_sorted(subs.begin(), subs.end(), [](const MatGroup& a, const MatGroup& b) {
        return a.order() != b.order() ? a.order() < b.order() : a.codes() < b.codes();
    }));
    CHECK_THROWS_AS(grp::enumerate_all_subgroups(5), Unsupported);
    CHECK(grp::enumerate_subgroups(grp::borel(5)).size() == lattice_by_joins(grp::borel(5)));
}

TEST_CASE("dichotomy fixtures") {
    const auto b = grp::classify_dichotomy(grp::borel(3));
    CHECK(b.kind == grp::Dichotomy::Kind::BorelConjugate);
    REQUIRE(b.witness);
    CHECK(*b.witness == Mat2{});
    CHECK(grp::classify_dichotomy(grp::general_linear(3)).kind == grp::Dichotomy::Kind::ContainsSL2);
    CHECK_THROWS_AS(grp::classify_dichotomy(grp::split_torus(3)), HypothesisNotMet);
}

TEST_CASE("dichotomy covers every subgroup with order divisible by 3") {
    const auto sl = grp::special_linear(3);
    for (const auto& h : grp::enumerate_all_subgroups(3)) {
        if (h.order() % 3 != 0) {
            CHECK_THROWS_AS(grp::classify_dichotomy(h), HypothesisNotMet);
            continue;
        }
        const auto d = grp::classify_dichotomy(h);
        const bool in_borel = d.kind == grp::Dichotomy::Kind::BorelConjugate;
        CHECK(in_borel != (d.kind == grp::Dichotomy::Kind::ContainsSL2));
        CHECK(d.contains_sl2 == h.contains(sl));
        if (in_borel) {
            REQUIRE(d.witness);
            CHECK(grp::borel(3).contains(grp::conjugate(h, *d.witness)));
        }
    }
}

TEST_CASE("conjugate of a Borel-conjugate group by its witness") {
    const Mat2 c = grp::make_mat2(5, 1, 2, 3, 4);
    const auto h = grp::conjugate(grp::borel_special(5), c);
    const auto w = grp::borel_conjugator(h);
    REQUIRE(w);
    CHECK(grp::borel(5).contains(grp::conjugate(h, *w)));
    CHECK_FALSE(grp::borel_conjugator(grp::special_linear(5)).has_value());
}

TEST_CASE("mat2 text round trip") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto x = grp::random_gl2(7, rng);
        CHECK(grp::det(x, 7) != 0);
        CHECK(grp::parse_mat2(grp::to_string(x), 7) == x);
    }
    CHECK(grp::parse_mat2("0,-1,1,0", 3) == grp::make_mat2(3, 0, 2, 1, 0));
    CHECK_THROWS_AS(grp::parse_mat2("1,2,3", 3), ParseError);
}

TEST_CASE("quotients and normality") {
    const auto gl = grp::general_linear(3);
    const auto sl_ids = grp::ids_in(grp::special_linear(3), gl);
    CHECK(grp::is_normal(*gl.table(), sl_ids));
    const auto q = grp::quotient(*gl.table(), sl_ids);
    CHECK(q.group->order() == 2);
    CHECK(grp::is_surjective(*q.group, q.projection));
    const auto b_ids = grp::ids_in(grp::borel(3), gl);
    CHECK_FALSE(grp::is_normal(*gl.table(), b_ids));
    CHECK_THROWS_AS(grp::quotient(*gl.table(), b_ids), NotNormal);
}
