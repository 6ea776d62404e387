#include <random>

#include "doctest.h"
#include "hasse/error.hpp"
#include "hasse/padic_curve.hpp"

using namespace hasse;
using padic::Padic;
using padic::PointQp;

namespace {

const ell::WeierstrassCurve& e1() {
    static const auto c = ell::make_curve("x3+x+1", 0, 0, 0, 1, 1);
    return c;
}

std::vector<ell::WeierstrassCurve> corpus() { return ell::load_curves(HASSE_DATA_DIR "/curves.csv"); }

Padic integer(std::uint32_t p, long v, int prec = 20) { return Padic::from_integer(p, v, prec); }

}  // namespace

TEST_CASE("arithmetic and precision") {
    const auto a = Padic::from_rational(5, mpq_class(7, 25), 10);
    CHECK(a.valuation() == -2);
    CHECK(a.abs_prec() == 10);
    const auto b = integer(5, 3, 6);
    const auto s = a + b;
    CHECK(s.abs_prec() == 6);
    CHECK(s.to_rational() - mpq_class(82, 25) == 0);
    const auto q = b / integer(5, 50, 12);
    CHECK(q.valuation() == -2);
    CHECK((q * integer(5, 50, 12)).equals(b));
    CHECK_THROWS_AS(b / Padic::zero(5), DivisionByZero);
    CHECK_THROWS_AS(b / Padic::zero(5, 4), DivisionByZero);
    // p^k - p^k is zero to absolute precision, not exactly zero
    const auto z = integer(5, 125, 8) - integer(5, 125, 8);
    CHECK(z.is_zero());
    CHECK_FALSE(z.is_exact_zero());
    CHECK(z.abs_prec() == 8);
    CHECK_THROWS(integer(5, 1) + integer(3, 1));
}

TEST_CASE("square roots") {
    const auto r4 = padic::sqrt_both(integer(5, 4));
    REQUIRE(r4);
    CHECK(r4->first.residue() == 2);
    CHECK(r4->first.equals(integer(5, 2)));
    CHECK(r4->second.equals(integer(5, -2)));
    CHECK_FALSE(padic::sqrt(integer(5, 2)).has_value());
    const auto r6 = padic::sqrt(integer(5, 6));
    REQUIRE(r6);
    CHECK((r6->residue() == 1 || r6->residue() == 4));
    CHECK((*r6 * *r6).equals(integer(5, 6)));
    CHECK_FALSE(padic::sqrt(integer(5, 10)).has_value());
    CHECK(padic::sqrt(integer(5, 4 * 25)).has_value());
}

TEST_CASE("hensel lifting") {
    CHECK(padic::hensel_root({-4, 0, 1}, 2, 5, 10).equals(integer(5, 2)));
    const auto r = padic::hensel_root({-6, 0, 1}, 1, 5, 4);
    const mpz_class v = r.to_integer();
    CHECK((v * v - 6) % 625 == 0);
    CHECK_THROWS_AS(padic::hensel_root({-5, 0, 1}, 0, 5, 4), EtaleFailure);
    CHECK_THROWS_AS(padic::hensel_root({-6, 0, 1}, 2, 5, 4), HypothesisNotMet);
}

TEST_CASE("roots over Z_p") {
    // (x - 1)(x - 6)(x - 11) has three roots congruent mod 5; separated at depth 2
    const std::vector<mpz_class> f{-66, 83, -18, 1};
    const auto roots = padic::zp_roots(f, 5, 10);
    CHECK(roots.size() == 3);
    for (const auto& r : roots) CHECK(padic::ppow(5, r.prec) > 0);
    CHECK(padic::zp_roots({-2, 0, 1}, 5, 10).empty());
    CHECK(padic::zp_roots({-66, 83, -18, 1}, 5, 10, 2u).empty());
}

TEST_CASE("points from an abscissa") {
    const auto pts = padic::point_on_curve(e1(), integer(5, 0));
    REQUIRE(pts.size() == 2);
    for (const auto& P : pts) {
        CHECK(padic::on_curve(e1(), P));
        CHECK((P.y.equals(integer(5, 1)) || P.y.equals(integer(5, -1))));
    }
    // y^2 = x^3 - x has 2-torsion at x = 0
    const auto c = ell::make_curve("32a2", 0, 0, 0, -1, 0);
    const auto t = padic::point_on_curve(c, integer(5, 0));
    REQUIRE(t.size() == 1);
    CHECK(padic::is_two_torsion(c, t[0]));
    // x = 2: 8 + 2 + 1 = 11 = 1 mod 5 is a square, x = 1: 3 is not
    CHECK(padic::point_on_curve(e1(), integer(5, 1)).empty());
    CHECK(padic::point_on_curve(e1(), integer(5, 2)).size() == 2);
}

TEST_CASE("group law") {
    std::mt19937_64 rng(43);
    for (const auto& c : corpus())
        for (std::uint32_t p : {3u, 5u}) {
            if (ell::reduction_type(c, p) != ell::Reduction::GoodOrdinary) continue;
            const auto P = padic::random_point(c, p, rng, 20);
            const auto Q = padic::random_point(c, p, rng, 20);
            CHECK(padic::on_curve(c, P));
            CHECK(padic::on_curve(c, padic::add(c, P, Q)));
            CHECK(padic::add(c, P, padic::negate(c, P)).infinity);
            const auto pq = padic::add(c, P, Q), qp = padic::add(c, Q, P);
            CHECK(padic::agreement(pq, qp).level >= 10);
            const auto three = padic::multiply(c, P, 3);
            const auto sum = padic::add(c, padic::add(c, P, P), P);
            CHECK(padic::agreement(three, sum).level >= 10);
        }
}

TEST_CASE("p-division") {
    const auto& c = e1();
    CHECK(padic::divide_by_p(c, PointQp::at_infinity())->infinity);
    CHECK(padic::in_pE(c, PointQp::at_infinity()));
    std::mt19937_64 rng(47);
    const auto P1 = padic::random_point(c, 5, rng, 30);
    CHECK(padic::in_pE(c, padic::add(c, P1, padic::negate(c, P1))));
    for (int i = 0; i < 5; ++i) {
        const auto R = padic::random_point(c, 5, rng, 30);
        CHECK(padic::in_pE(c, padic::multiply(c, R, 5)));
    }
    // #E(F_5) = 9 is prime to 5, so 9R sits in E_1; at level exactly 1 it is not in 5E
    int checked = 0;
    for (int i = 0; i < 20 && checked < 3; ++i) {
        const auto R = padic::random_point(c, 5, rng, 30);
        const auto S = padic::multiply(c, R, 9);
        if (S.infinity || padic::filtration_level(S) != 1) continue;
        CHECK_FALSE(padic::divide_by_p(c, S).has_value());
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("p-division round trip over Q_5") {
    std::mt19937_64 rng(53);
    const auto curves = corpus();
    int ok = 0;
    for (int i = 0; i < 50; ++i) {
        const auto& c = i % 2 ? e1() : curves[0];
        const auto Q = padic::random_point(c, 5, rng, 30);
        const auto P = padic::multiply(c, Q, 5);
        const auto Q2 = padic::divide_by_p(c, P);
        REQUIRE(Q2);
        const auto P2 = padic::multiply(c, *Q2, 5);
        CHECK(padic::on_curve(c, *Q2));
        CHECK(P2.x.equals(P.x));
        CHECK(P2.y.equals(P.y));
        ++ok;
    }
    CHECK(ok == 50);
}

TEST_CASE("approximation certificates") {
    const auto& c = e1();
    SUBCASE("rational input") {
        const auto P1 = padic::point_on_curve(c, integer(5, 0, 20)).at(0);
        const auto cert = padic::approximate_point(c, P1);
        CHECK(cert.verified);
        CHECK(cert.x == 0);
        CHECK(cert.difference.infinity);
    }
    SUBCASE("random lifts at p = 5") {
        std::mt19937_64 rng(59);
        for (int i = 0; i < 10; ++i) {
            const auto P1 = padic::random_point(c, 5, rng, 40);
            const auto cert = padic::approximate_point(c, P1);
            CHECK(cert.verified);
            CHECK(cert.depth <= 6);
            const auto j = padic::to_json(cert);
            CHECK(padic::verify_certificate(nlohmann::json::parse(j.dump())).ok);
        }
    }
    SUBCASE("rejections") {
        const auto t = ell::make_curve("32a2", 0, 0, 0, -1, 0);
        const auto T = padic::point_on_curve(t, integer(5, 0)).at(0);
        CHECK_THROWS_AS(padic::approximate_point(t, T), TwoTorsionInput);
        const auto s = ell::make_curve("b", 0, 0, 0, 0, 1);
        std::mt19937_64 rng(61);
        CHECK_THROWS_AS(padic::approximate_point(s, padic::random_point(s, 5, rng, 20)),
                        SupersingularInput);
        CHECK_THROWS_AS(padic::approximate_point(c, PointQp::at_infinity()), HypothesisNotMet);
        const auto off = PointQp::affine(integer(5, 0), integer(5, 2));
        CHECK_THROWS_AS(padic::approximate_point(c, off), HypothesisNotMet);
        const auto e37 = ell::make_curve("37a1", 0, 0, 1, -1, 0);
        const auto Q37 = PointQp::affine(integer(37, 0), integer(37, 0));
        CHECK_THROWS_AS(padic::approximate_point(e37, Q37), BadReduction);
    }
}

TEST_CASE("certificates from the corpus verify and resist tampering") {
    std::mt19937_64 rng(67);
    for (std::uint32_t p : {3u, 5u})
        for (const auto& c : corpus()) {
            if (ell::reduction_type(c, p) != ell::Reduction::GoodOrdinary) continue;
            const auto cert = padic::approximate_point(c, padic::random_point(c, p, rng, 40));
            CAPTURE(c.label);
            CHECK(cert.verified);
            CHECK(cert.depth <= 16);
            auto j = padic::to_json(cert);
            CHECK(padic::verify_certificate(j).ok);
            auto bad = j;
            bad["x"] = padic::rational_to_string(cert.x + 1);
            CHECK_FALSE(padic::verify_certificate(bad).ok);
            bad = j;
            bad["transcript"][0]["curve"][4] = c.a6 + p;
            CHECK_FALSE(padic::verify_certificate(bad).ok);
        }
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(71);
    const auto P = padic::random_point(e1(), 5, rng, 12);
    const auto Q = padic::point_from_json(5, padic::to_json(P));
    CHECK(Q.x.equals(P.x));
    CHECK(Q.y.abs_prec() == P.y.abs_prec());
    CHECK(padic::point_from_json(5, padic::to_json(PointQp::at_infinity())).infinity);
    const auto z = padic::padic_from_json(5, padic::to_json(Padic::zero(5)));
    CHECK(z.is_exact_zero());
    CHECK(padic::parse_rational("-3/12") == mpq_class(-1, 4));
    CHECK(padic::rational_to_string(mpq_class(6, 4)) == "3/2");
    CHECK_THROWS_AS(padic::parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(padic::parse_rational("x"), ParseError);
}

TEST_CASE("canonical abscissa") {
    CHECK(padic::canonical_abscissa(integer(5, 37), 2) == 12);
    CHECK(padic::canonical_abscissa(integer(5, -1), 1) == 4);
}
