#include "hasse/padic_curve.hpp"

#include <algorithm>

#include "hasse/error.hpp"
#include "hasse/fp_matrix.hpp"

namespace hasse::padic {

namespace {

struct Coeffs {
    mpz_class a1, a2, a3, a4, a6, b2, b4, b6;
};

Coeffs coeffs(const ell::WeierstrassCurve& c) {
    return {mpz_class(static_cast<long>(c.a1)), mpz_class(static_cast<long>(c.a2)),
            mpz_class(static_cast<long>(c.a3)), mpz_class(static_cast<long>(c.a4)),
            mpz_class(static_cast<long>(c.a6)), c.b2, c.b4, c.b6};
}

// a1 x + a3
Padic tangent_shift(const Coeffs& k, const Padic& x) { return x * k.a1 + k.a3; }

// 4x^3 + b2 x^2 + 2 b4 x + b6
Padic quad_disc(const Coeffs& k, const Padic& x) {
    return ((x * mpz_class(4) + k.b2) * x + mpz_class(2 * k.b4)) * x + k.b6;
}

// Valuation, or the known precision of a zero.
int level_of(const Padic& d) { return d.valuation(); }

void require_good(const ell::WeierstrassCurve& c, std::uint32_t p) {
    if (!ell::good_reduction(c, p))
        throw BadReduction("curve " + c.label + " has bad reduction at " + std::to_string(p));
}

}  // namespace

Padic equation_residual(const ell::WeierstrassCurve& c, const PointQp& P) {
    if (P.infinity) throw HypothesisNotMet("residual of the point at infinity");
    const auto k = coeffs(c);
    const Padic lhs = P.y * (P.y + tangent_shift(k, P.x));
    const Padic rhs = ((P.x + k.a2) * P.x + k.a4) * P.x + k.a6;
    return lhs - rhs;
}

bool on_curve(const ell::WeierstrassCurve& c, const PointQp& P) {
    return P.infinity || equation_residual(c, P).is_zero();
}

PointQp negate(const ell::WeierstrassCurve& c, const PointQp& P) {
    if (P.infinity) return P;
    const auto k = coeffs(c);
    return PointQp::affine(P.x, -P.y - tangent_shift(k, P.x));
}

bool is_two_torsion(const ell::WeierstrassCurve& c, const PointQp& P) {
    if (P.infinity) return false;
    const auto k = coeffs(c);
    return (P.y * mpz_class(2) + tangent_shift(k, P.x)).is_zero();
}

PointQp add(const ell::WeierstrassCurve& c, const PointQp& P, const PointQp& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const auto k = coeffs(c);
    const Padic dx = Q.x - P.x;
    Padic lambda, nu;
    int cap = kInf;
    if (dx.is_zero()) {
        const Padic s = P.y + Q.y + tangent_shift(k, Q.x);
        if (s.is_zero()) return PointQp::at_infinity();
        const Padic den = P.y * mpz_class(2) + tangent_shift(k, P.x);
        lambda = ((P.x * mpz_class(3) + mpz_class(2 * k.a2)) * P.x + k.a4 - P.y * k.a1) / den;
        nu = (((-P.x) * P.x + k.a4) * P.x + mpz_class(2 * k.a6) - P.y * k.a3) / den;
        // Q only agrees with P to the precision of dx.
        if (!dx.is_exact_zero()) cap = dx.abs_prec();
    } else {
        lambda = (Q.y - P.y) / dx;
        nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    Padic x3 = lambda * lambda + lambda * k.a1 - k.a2 - P.x - Q.x;
    Padic y3 = -(lambda + k.a1) * x3 - nu - k.a3;
    if (cap < kInf) {
        x3 = x3.with_abs_prec(cap);
        y3 = y3.with_abs_prec(cap);
    }
    return PointQp::affine(std::move(x3), std::move(y3));
}

PointQp multiply(const ell::WeierstrassCurve& c, const PointQp& P, long long n) {
    if (n < 0) return multiply(c, negate(c, P), -n);
    PointQp acc = PointQp::at_infinity();
    PointQp base = P;
    auto m = static_cast<unsigned long long>(n);
    while (m > 0) {
        if (m & 1ULL) acc = add(c, acc, base);
        m >>= 1;
        if (m > 0) base = add(c, base, base);
    }
    return acc;
}

int filtration_level(const PointQp& P) {
    if (P.infinity) return kInf;
    if (P.x.is_zero() || P.x.valuation() >= 0) return 0;
    return -P.x.valuation() / 2;
}

Agreement agreement(const PointQp& P, const PointQp& R) {
    if (P.infinity && R.infinity) return {kInf, false};
    if (P.infinity || R.infinity) return {filtration_level(P.infinity ? R : P), false};
    const bool p_near = filtration_level(P) > 0;
    const bool r_near = filtration_level(R) > 0;
    if (p_near != r_near) return {0, false};
    if (p_near) {
        const Padic d = (-P.x) / P.y - (-R.x) / R.y;
        return {level_of(d), d.is_zero()};
    }
    const Padic dx = P.x - R.x;
    const Padic dy = P.y - R.y;
    return {std::min(level_of(dx), level_of(dy)), dx.is_zero() && dy.is_zero()};
}

std::vector<PointQp> point_on_curve(const ell::WeierstrassCurve& c, const Padic& x) {
    const auto k = coeffs(c);
    const Padic d = quad_disc(k, x);
    const Padic t = tangent_shift(k, x);
    const mpz_class two = 2;
    if (d.is_zero()) return {PointQp::affine(x, (-t) / two)};
    const auto roots = sqrt_both(d);
    if (!roots) return {};
    return {PointQp::affine(x, (roots->first - t) / two),
            PointQp::affine(x, (roots->second - t) / two)};
}

std::optional<PointQp> divide_by_p(const ell::WeierstrassCurve& c, const PointQp& P) {
    if (P.infinity) return P;
    const std::uint32_t p = P.x.p();
    require_good(c, p);
    const long long pl = p;
    if (is_two_torsion(c, P)) {
        // p is odd, so pP = P.
        if (agreement(multiply(c, P, pl), P).level >= 2) return P;
    }

    const auto mm = ell::multiplication_x_map(c, static_cast<int>(p));
    const int shift = (!P.x.is_zero() && P.x.valuation() < 0) ? -P.x.valuation() : 0;
    const Padic x0 = P.x * ppow(p, shift);
    const int m = x0.abs_prec();
    if (m < 1) throw PrecisionExhausted("abscissa known to no digits");
    const mpz_class x0i = x0.to_integer();
    const std::size_t deg = static_cast<std::size_t>(p) * p;
    std::vector<mpz_class> g(deg + 1, 0);
    const mpz_class ps = ppow(p, shift);
    for (std::size_t i = 0; i < mm.phi.size(); ++i) g[i] += ps * mm.phi[i];
    for (std::size_t i = 0; i < mm.psi_sq.size(); ++i) g[i] -= x0i * mm.psi_sq[i];

    std::vector<Padic> abscissae;
    for (const auto& r : zp_roots(g, p, m)) abscissae.push_back(Padic::from_integer(p, r.value, r.prec));
    if (shift > 0) {
        // Q near infinity: roots Y = 1/X of the reversed polynomial in pZ_p.
        std::vector<mpz_class> rev(g.rbegin(), g.rend());
        for (const auto& r : zp_roots(rev, p, m, 0u)) {
            const Padic y = Padic::from_integer(p, r.value, r.prec);
            if (y.is_zero()) throw PrecisionExhausted("root too close to infinity");
            abscissae.push_back(Padic::from_integer(p, 1, r.prec + 2 * y.valuation()) / y);
        }
    }

    // Near infinity P and -P agree to level 2 as well, so keep the best match
    // rather than the first one over the threshold.
    const PointQp minus_p = negate(c, P);
    bool limited = false;
    std::optional<PointQp> best;
    int best_level = 1;
    for (const auto& xq : abscissae)
        for (const auto& q : point_on_curve(c, xq)) {
            const PointQp r = multiply(c, q, pl);
            const auto plus = agreement(r, P);
            const auto minus = agreement(r, minus_p);
            if (plus.level > best_level) {
                best_level = plus.level;
                best = q;
            }
            if (minus.level > best_level) {
                best_level = minus.level;
                best = negate(c, q);
            }
            limited = limited || plus.precision_limited || minus.precision_limited;
        }
    if (best) return best;
    if (limited) throw PrecisionExhausted("candidate divisors not separated at this precision");
    return std::nullopt;
}

bool in_pE(const ell::WeierstrassCurve& c, const PointQp& P) {
    return divide_by_p(c, P).has_value();
}

PointQp random_point(const ell::WeierstrassCurve& c, std::uint32_t p, std::mt19937_64& rng,
                     int prec) {
    require_good(c, p);
    if (prec < 2) throw HypothesisNotMet("random point needs at least 2 digits");
    const auto k = coeffs(c);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const std::uint64_t xr = rng() % p;
        const mpz_class xbar = static_cast<unsigned long>(xr);
        const Padic dbar = quad_disc(k, Padic::from_integer(p, xbar, 1));
        if (dbar.is_zero() || !sqrt(dbar)) continue;
        mpz_class x = xbar;
        mpz_class scale = p;
        for (int i = 1; i < prec; ++i) {
            x += scale * static_cast<unsigned long>(rng() % p);
            scale *= p;
        }
        const Padic xp = Padic::from_integer(p, x, prec);
        const auto pts = point_on_curve(c, xp);
        if (pts.size() != 2) continue;
        return pts[rng() % 2];
    }
    throw HypothesisNotMet("no point with nonzero y-discriminant found");
}

// ---------------------------------------------------------------------------

mpq_class canonical_abscissa(const Padic& x1, int depth) {
    const std::uint32_t p = x1.p();
    if (x1.abs_prec() < depth)
        throw PrecisionExhausted("P1 is known to fewer than " + std::to_string(depth) + " digits");
    if (x1.is_zero()) return 0;
    if (x1.valuation() >= depth) return 0;
    const int v = x1.valuation();
    mpz_class u = x1.unit();
    mpz_class r;
    const auto m = ppow(p, depth - v);
    mpz_fdiv_r(r.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    if (v >= 0) return mpq_class(r * ppow(p, v));
    mpq_class q(r, ppow(p, -v));
    q.canonicalize();
    return q;
}

namespace {

mpq_class quad_disc_rational(const ell::WeierstrassCurve& c, const mpq_class& x) {
    return ((4 * x + mpq_class(c.b2)) * x + mpq_class(2 * c.b4)) * x + mpq_class(c.b6);
}

bool is_rational_square(const mpq_class& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

// The lift (x, y') with y' on the branch closest to y1; empty when the
// y-discriminant at x is not a square in Q_p.
std::optional<PointQp> lift_point(const ell::WeierstrassCurve& c, const PointQp& p1,
                                  const mpq_class& x, int working) {
    const auto xp = Padic::from_rational(p1.x.p(), x, working);
    const auto pts = point_on_curve(c, xp);
    std::optional<PointQp> best;
    int best_level = -kInf;
    for (const auto& q : pts) {
        const int lv = (q.y - p1.y).valuation();
        if (lv > best_level) {
            best_level = lv;
            best = q;
        }
    }
    return best;
}

}  // namespace

Certificate approximate_point(const ell::WeierstrassCurve& c, const PointQp& p1,
                              const ApproximationPolicy& policy) {
    if (p1.infinity) throw HypothesisNotMet("P1 must be an affine point");
    const std::uint32_t p = p1.x.p();
    switch (ell::reduction_type(c, p)) {
        case ell::Reduction::Bad:
            throw BadReduction("curve " + c.label + " has bad reduction at " + std::to_string(p));
        case ell::Reduction::GoodSupersingular:
            throw SupersingularInput("curve " + c.label + " is supersingular at " +
                                     std::to_string(p));
        case ell::Reduction::GoodOrdinary: break;
    }
    if (!on_curve(c, p1)) throw HypothesisNotMet("P1 is not on the curve");
    if (is_two_torsion(c, p1)) throw TwoTorsionInput("P1 lies in E[2]");

    for (int depth = 1; depth <= policy.depth_max; ++depth) {
        mpq_class x;
        try {
            x = canonical_abscissa(p1.x, depth);
        } catch (const PrecisionExhausted&) {
            break;
        }
        const int start = std::max(policy.working_prec, depth + 4);
        const int cap = std::max(policy.max_working_prec, 2 * start);
        for (int working = start; working <= cap; working *= 2) {
            const auto lifted = lift_point(c, p1, x, working);
            if (!lifted) break;
            const PointQp diff = add(c, *lifted, negate(c, p1));
            std::optional<PointQp> witness;
            try {
                witness = divide_by_p(c, diff);
            } catch (const PrecisionExhausted&) {
                continue;
            }
            if (!witness) break;
            Certificate cert;
            cert.curve = c;
            cert.p = p;
            cert.p1 = p1;
            cert.x = x;
            cert.quad_disc = quad_disc_rational(c, x);
            cert.quad_disc_square = is_rational_square(cert.quad_disc);
            cert.lifted = *lifted;
            cert.depth = depth;
            cert.working_prec = working;
            cert.difference = diff;
            cert.witness = witness;
            cert.agreement_level =
                agreement(multiply(c, *witness, static_cast<long long>(p)), diff).level;
            cert.verified = cert.agreement_level >= 2;
            return cert;
        }
    }
    throw PolicyExhausted("no depth <= " + std::to_string(policy.depth_max) +
                          " produced a verified approximation");
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Padic& x) {
    return {{"val", x.valuation() >= kInf ? -1 : x.valuation()},
            {"unit", x.unit().get_str()},
            {"prec", x.is_exact_zero() ? -1 : x.rel_prec()}};
}

Padic padic_from_json(std::uint32_t p, const nlohmann::json& j) {
    const int val = j.at("val").get<int>();
    const int prec = j.at("prec").get<int>();
    const mpz_class unit(j.at("unit").get<std::string>());
    if (unit == 0 && prec == -1) return Padic::zero(p);
    return Padic::from_parts(p, val, unit, prec);
}

nlohmann::json to_json(const PointQp& P) {
    if (P.infinity) return {{"infinity", true}};
    return {{"infinity", false}, {"x", to_json(P.x)}, {"y", to_json(P.y)}};
}

PointQp point_from_json(std::uint32_t p, const nlohmann::json& j) {
    if (j.at("infinity").get<bool>()) return PointQp::at_infinity();
    return PointQp::affine(padic_from_json(p, j.at("x")), padic_from_json(p, j.at("y")));
}

std::string rational_to_string(const mpq_class& q) {
    mpq_class r = q;
    r.canonicalize();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

mpq_class parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return mpq_class(mpz_class(s));
        mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        if (q.get_den() == 0) throw ParseError("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

nlohmann::json to_json(const Certificate& cert) {
    const auto& c = cert.curve;
    nlohmann::json transcript = nlohmann::json::array();
    transcript.push_back({{"step", "input"},
                          {"curve", {c.a1, c.a2, c.a3, c.a4, c.a6}},
                          {"P1", to_json(cert.p1)},
                          {"working_prec", cert.working_prec}});
    transcript.push_back({{"step", "lift"},
                          {"x", rational_to_string(cert.x)},
                          {"point", to_json(cert.lifted)},
                          {"quad_disc_square", cert.quad_disc_square}});
    transcript.push_back({{"step", "difference"}, {"point", to_json(cert.difference)}});
    transcript.push_back({{"step", "p_division"},
                          {"witness", cert.witness ? to_json(*cert.witness) : nlohmann::json()}});
    transcript.push_back({{"step", "check"},
                          {"agreement", cert.agreement_level},
                          {"required", 2}});
    return {{"label", c.label},
            {"p", cert.p},
            {"x", rational_to_string(cert.x)},
            {"quad_disc", rational_to_string(cert.quad_disc)},
            {"depth", cert.depth},
            {"verified", cert.verified},
            {"transcript", transcript}};
}

VerifyResult verify_certificate(const nlohmann::json& j) {
    VerifyResult out;
    auto fail = [&](const std::string& why) { out.failures.push_back(why); };
    try {
        const auto p = j.at("p").get<std::uint32_t>();
        const auto& tr = j.at("transcript");
        auto step = [&](const std::string& name) -> const nlohmann::json& {
            for (const auto& s : tr)
                if (s.at("step") == name) return s;
            throw ParseError("transcript lacks step '" + name + "'");
        };
        const auto& input = step("input");
        const auto a = input.at("curve").get<std::vector<long long>>();
        if (a.size() != 5) throw ParseError("curve needs five coefficients");
        const auto c = ell::make_curve(j.at("label").get<std::string>(), a[0], a[1], a[2], a[3], a[4]);
        const PointQp p1 = point_from_json(p, input.at("P1"));
        const int working = input.at("working_prec").get<int>();
        const int depth = j.at("depth").get<int>();
        const mpq_class x = parse_rational(j.at("x").get<std::string>());

        if (ell::reduction_type(c, p) != ell::Reduction::GoodOrdinary) fail("p is not good ordinary");
        if (p1.infinity || !on_curve(c, p1)) fail("P1 is not an affine point of the curve");
        if (is_two_torsion(c, p1)) fail("P1 is 2-torsion");
        if (canonical_abscissa(p1.x, depth) != x) fail("x is not the canonical representative of x1");
        if ((Padic::from_rational(p, x, depth) - p1.x.with_abs_prec(depth)).is_zero() == false)
            fail("x is not congruent to x1");
        if (parse_rational(j.at("quad_disc").get<std::string>()) != quad_disc_rational(c, x))
            fail("quadratic discriminant mismatch");

        const auto lifted = lift_point(c, p1, x, working);
        const PointQp stored_lift = point_from_json(p, step("lift").at("point"));
        if (!lifted) {
            fail("y-discriminant is not a square in Q_p");
        } else {
            if (agreement(*lifted, stored_lift).level < working - 1) fail("lifted point mismatch");
            if (!on_curve(c, *lifted)) fail("lifted point is off the curve");
            const PointQp diff = add(c, *lifted, negate(c, p1));
            const auto& wj = step("p_division").at("witness");
            if (wj.is_null()) {
                fail("no p-division witness");
            } else {
                const PointQp w = point_from_json(p, wj);
                if (!on_curve(c, w)) fail("witness is off the curve");
                if (agreement(multiply(c, w, p), diff).level < 2) fail("p * witness != difference");
            }
            if (!in_pE(c, diff)) fail("difference is not in pE");
        }
        if (!j.at("verified").get<bool>()) fail("certificate is marked unverified");
    } catch (const std::exception& e) {
        fail(std::string("malformed certificate: ") + e.what());
    }
    out.ok = out.failures.empty();
    return out;
}

// ---------------------------------------------------------------------------

StarReport star_condition_report(const ell::WeierstrassCurve& c, std::uint32_t p, int degree) {
    if (p == 2 || !fp::is_prime(p)) throw NotPrime("star condition needs an odd prime");
    if (degree < 1) throw HypothesisNotMet("degree must be >= 1");
    require_good(c, p);
    StarReport r{p, degree, static_cast<int>(p) - 1, false, ""};
    r.possible = r.cyclotomic_degree <= degree;
    r.inequality = "p-1 = " + std::to_string(r.cyclotomic_degree) + (r.possible ? " <= " : " > ") +
                   std::to_string(degree);
    return r;
}

}  // namespace hasse::padic
