#include <cmath>

#include "doctest.h"
#include "hasse/elliptic.hpp"
#include "hasse/error.hpp"
#include "hasse/padic_curve.hpp"

using namespace hasse;
using ell::WeierstrassCurve;

namespace {

std::vector<WeierstrassCurve> corpus() { return ell::load_curves(HASSE_DATA_DIR "/curves.csv"); }

// Euler-criterion count on the completed square, written independently of the library.
long long legendre_count(const WeierstrassCurve& c, long long p) {
    auto md = [&](long long v) { return ((v % p) + p) % p; };
    auto pw = [&](long long b, long long e) {
        long long r = 1;
        b = md(b);
        for (; e; e >>= 1, b = b * b % p)
            if (e & 1) r = r * b % p;
        return r;
    };
    const long long b2 = md(c.a1 * c.a1 + 4 * c.a2), b4 = md(2 * c.a4 + c.a1 * c.a3),
                    b6 = md(c.a3 * c.a3 + 4 * c.a6);
    long long n = 1;
    for (long long x = 0; x < p; ++x) {
        const long long d = md(4 * x % p * x % p * x + b2 * x % p * x + 2 * b4 * x + b6);
        n += d == 0 ? 1 : (pw(d, (p - 1) / 2) == 1 ? 2 : 0);
    }
    return n;
}

WeierstrassCurve shift_x(const WeierstrassCurve& c) {
    // x -> x + 1 on a curve with a1 = a3 = 0
    return ell::make_curve(c.label + "+1", 0, c.a2 + 3, 0, 3 + 2 * c.a2 + c.a4,
                           1 + c.a2 + c.a4 + c.a6);
}

}  // namespace

TEST_CASE("discriminant fixtures") {
    const auto e1 = ell::make_curve("a", 0, 0, 0, 1, 1);
    CHECK(e1.disc == -16 * (4 * 1 + 27 * 1));
    CHECK(e1.disc == -496);
    CHECK(ell::make_curve("b", 0, 0, 1, -1, 0).disc == 37);
    // y^2 + y = x^3 - x is y'^2 = x^3 - x + 1/4 after completing the square; 16 * Delta scales by 2^12
    const auto scaled = ell::make_curve("b'", 0, 0, 0, -16, 16);
    CHECK(scaled.disc == 37 * 4096);
    CHECK(ell::make_curve("c", 0, 0, 0, -1, 0).disc == 64);
    CHECK_THROWS_AS(ell::make_curve("s", 0, 0, 0, 0, 0), SingularCurve);
    CHECK_THROWS_AS(ell::make_curve("s", 0, 0, 0, -3, 2), SingularCurve);
}

TEST_CASE("trace fixtures") {
    const auto e1 = ell::make_curve("a", 0, 0, 0, 1, 1);
    const auto e2 = ell::make_curve("b", 0, 0, 0, 0, 1);
    CHECK(ell::point_count_naive(e1, 5) == 9);
    CHECK(ell::ap(e1, 5) == -3);
    CHECK(ell::point_count_naive(e2, 5) == 6);
    CHECK(ell::ap(e2, 5) == 0);
    CHECK(ell::reduction_type(e1, 5) == ell::Reduction::GoodOrdinary);
    CHECK(ell::reduction_type(e2, 5) == ell::Reduction::GoodSupersingular);
    const auto e37 = ell::make_curve("37a1", 0, 0, 1, -1, 0);
    CHECK(ell::reduction_type(e37, 37) == ell::Reduction::Bad);
    CHECK_THROWS_AS(ell::ap(e37, 37), BadReduction);
}

TEST_CASE("point counts agree across three methods on the corpus") {
    for (const auto& c : corpus())
        for (auto p : ell::primes_up_to(100)) {
            if (!ell::good_reduction(c, p)) continue;
            CAPTURE(c.label);
            CAPTURE(p);
            const auto naive = ell::point_count_naive(c, p);
            if (p != 2) {
                CHECK(ell::point_count(c, p) == naive);
                CHECK(legendre_count(c, p) == static_cast<long long>(naive));
            }
            const double a = static_cast<double>(p + 1) - static_cast<double>(naive);
            CHECK(a * a <= 4.0 * p);
        }
}

TEST_CASE("counts are invariant under x -> x + 1") {
    for (const auto& c : corpus()) {
        if (c.a1 != 0 || c.a3 != 0) continue;
        const auto s = shift_x(c);
        CHECK(s.disc == c.disc);
        for (auto p : ell::primes_up_to(60))
            if (p > 2 && ell::good_reduction(c, p)) CHECK(ell::ap(s, p) == ell::ap(c, p));
    }
}

TEST_CASE("division polynomials") {
    const auto c = ell::make_curve("s", 0, 0, 0, 2, 3);
    CHECK(ell::division_polynomial(c, 1).f == ell::Poly{1});
    // 3x^4 + 6ax^2 + 12bx - a^2 with a = 2, b = 3
    CHECK(ell::division_polynomial(c, 3).f == ell::Poly{-4, 36, 12, 0, 3});
    for (int n : {3, 5, 7}) {
        const auto d = ell::division_polynomial(c, n);
        CHECK_FALSE(d.y_factor);
        CHECK(ell::poly_degree(d.f) == (n * n - 1) / 2);
    }
    CHECK(ell::division_polynomial(c, 4).y_factor);
}

TEST_CASE("multiplication map matches the group law") {
    std::mt19937_64 rng(41);
    for (const auto& c : corpus()) {
        for (std::uint32_t p : {5u, 7u}) {
            if (ell::reduction_type(c, p) != ell::Reduction::GoodOrdinary) continue;
            const auto P = padic::random_point(c, p, rng, 20);
            for (int n : {2, 3, 5}) {
                const auto m = ell::multiplication_x_map(c, n);
                const auto nP = padic::multiply(c, P, n);
                if (nP.infinity || nP.x.valuation() < 0) continue;
                auto eval = [&](const ell::Poly& f) {
                    auto acc = padic::Padic::zero(p);
                    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * P.x + *it;
                    return acc;
                };
                const auto den = eval(m.psi_sq);
                if (den.valuation() > 0) continue;
                CHECK((eval(m.phi) / den).equals(nP.x));
            }
        }
    }
}

TEST_CASE("ordinary density") {
    const auto e = ell::make_curve("a", 0, 0, 0, 1, 1);
    const double d = ell::ordinary_density_sample(e, 200);
    CHECK(d > 0.5);
    CHECK(d <= 1.0);
    const auto cm = ell::make_curve("32a2", 0, 0, 0, -1, 0);
    CHECK(ell::has_cm(cm));
    CHECK(std::abs(ell::ordinary_density_sample(cm, 200) - 0.5) <= 0.15);
    CHECK_NOTHROW(ell::ordinary_density_sample(e, 10));
    CHECK_THROWS_AS(ell::ordinary_density_sample(e, 9), HypothesisNotMet);
    for (const auto& c : corpus())
        if (!ell::has_cm(c)) CHECK(ell::ordinary_density_sample(c, 500) >= 0.8);
}

TEST_CASE("prime verdicts") {
    const auto e37 = ell::make_curve("37a1", 0, 0, 1, -1, 0);
    for (const auto& v : ell::elimination_scan(e37, 50)) {
        if (v.reduction == ell::Reduction::GoodOrdinary && v.p >= 5) CHECK(v.eliminated);
        if (v.p == 37) CHECK(v.reason == ell::Reason::Bad);
    }
    const auto e2 = ell::make_curve("b", 0, 0, 0, 0, 1);
    CHECK(ell::prime_verdict(e2, 5).reason == ell::Reason::SupersingularOutOfScope);
    CHECK(ell::prime_verdict(e2, 2).reason == ell::Reason::SmallPrimeNotCovered);
    const auto three = ell::elimination_scan(e37, 3);
    REQUIRE(three.size() == 1);
    CHECK(three[0].p == 3);
    // with a closure of degree 4 the prime 5 is no longer ruled out
    const auto e1 = ell::make_curve("a", 0, 0, 0, 1, 1);
    CHECK_FALSE(ell::prime_verdict(e1, 5, 4).eliminated);
    CHECK(ell::prime_verdict(e1, 5, 4).reason == ell::Reason::SmallPrimeNotCovered);
    CHECK(ell::prime_verdict(e1, 5, 3).reason == ell::Reason::DegreeBound);
}

TEST_CASE("scan verdicts partition the primes") {
    for (const auto& c : corpus()) {
        const auto scan = ell::elimination_scan(c, 500);
        CHECK(scan.front().p == 3);
        for (const auto& v : scan) {
            const bool ordinary = v.reduction == ell::Reduction::GoodOrdinary;
            CHECK(v.eliminated == (ordinary && v.p >= 5));
            CHECK(v.ap.has_value() == (v.reduction != ell::Reduction::Bad));
            switch (v.reason) {
                case ell::Reason::Bad: CHECK(v.reduction == ell::Reduction::Bad); break;
                case ell::Reason::SupersingularOutOfScope:
                    CHECK(v.reduction == ell::Reduction::GoodSupersingular);
                    break;
                case ell::Reason::DegreeBound: CHECK(v.eliminated); break;
                case ell::Reason::SmallPrimeNotCovered:
                    CHECK(ordinary);
                    CHECK(v.p == 3);
                    break;
            }
        }
        const auto again = ell::elimination_scan(c, 500);
        REQUIRE(again.size() == scan.size());
        for (std::size_t i = 0; i < scan.size(); ++i) CHECK(again[i].eliminated == scan[i].eliminated);
    }
}

TEST_CASE("star condition") {
    const auto e = ell::make_curve("a", 0, 0, 0, 1, 1);
    CHECK_FALSE(padic::star_condition_report(e, 7, 1).possible);
    CHECK(padic::star_condition_report(e, 3, 2).possible);
    CHECK(padic::star_condition_report(e, 5, 10).possible);
    CHECK(padic::star_condition_report(e, 5, 10).ramification == "NOT-EVALUATED");
}

TEST_CASE("curve file parsing") {
    const auto cs = ell::parse_curves("# c\n\nE,0,0,0,1,1\n");
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].label == "E");
    CHECK_THROWS_AS(ell::parse_curves("E,0,0,0,1\n"), ParseError);
    CHECK_THROWS_AS(ell::parse_curves("E,0,0,0,1,1\nE,0,0,0,1,2\n"), ParseError);
    CHECK_THROWS_AS(ell::parse_curves("E,0,0,0,0,0\n"), ParseError);
    CHECK_THROWS_AS(ell::find_curve(cs, "F"), ParseError);
    CHECK(corpus().size() == 10);
}
