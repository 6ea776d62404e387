#pragma once

// Points of E(Q_p), the group law at finite precision, p-division and the
// approximation procedure with self-contained JSON certificates.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "hasse/elliptic.hpp"
#include "hasse/padic.hpp"

namespace hasse::padic {

struct PointQp {
    bool infinity = true;
    Padic x, y;

    static PointQp at_infinity() { return {}; }
    static PointQp affine(Padic x, Padic y) { return {false, std::move(x), std::move(y)}; }
};

/// y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6) at P.
Padic equation_residual(const ell::WeierstrassCurve& c, const PointQp& P);
/// The residual vanishes to its tracked precision.
bool on_curve(const ell::WeierstrassCurve& c, const PointQp& P);

PointQp negate(const ell::WeierstrassCurve& c, const PointQp& P);
/// Chord-and-tangent addition. Points that agree (or are opposite) to the
/// available precision are treated as equal (or as summing to infinity).
PointQp add(const ell::WeierstrassCurve& c, const PointQp& P, const PointQp& Q);
PointQp multiply(const ell::WeierstrassCurve& c, const PointQp& P, long long n);

/// 2y + a1 x + a3 vanishes to precision.
bool is_two_torsion(const ell::WeierstrassCurve& c, const PointQp& P);

/// k with P in E_k (the k-th level of the reduction filtration, E_0 = E(Q_p));
/// kInf for infinity.
int filtration_level(const PointQp& P);

/// Lower bound k for which P - R lies in E_k, read off from coordinates
/// (integral coordinates mod p^k, or the formal parameter -x/y near infinity).
struct Agreement {
    int level = 0;
    bool precision_limited = false;
};
Agreement agreement(const PointQp& P, const PointQp& R);

/// Points with the given abscissa: two when the y-discriminant is a nonzero
/// square, one when it vanishes, none otherwise.
std::vector<PointQp> point_on_curve(const ell::WeierstrassCurve& c, const Padic& x);

/// Some Q with P - pQ in E_2 (a subgroup contained in pE(Q_p) for odd p and
/// good reduction), or none when P is not in pE(Q_p). Candidates for x(Q) are
/// the Q_p-roots of phi_p(X) - x(P) psi_p(X)^2. Throws PrecisionExhausted when
/// the precision of P does not separate the roots.
std::optional<PointQp> divide_by_p(const ell::WeierstrassCurve& c, const PointQp& P);
bool in_pE(const ell::WeierstrassCurve& c, const PointQp& P);

/// Uniform residue with nonzero square y-discriminant, random higher digits,
/// random branch of y. Never 2-torsion.
PointQp random_point(const ell::WeierstrassCurve& c, std::uint32_t p, std::mt19937_64& rng,
                     int prec);

// Approximation -----------------------------------------------------------------

struct ApproximationPolicy {
    int depth_max = 16;
    int working_prec = 8;       // initial digits for the lifted point
    int max_working_prec = 32;  // escalation cap (raised to 2 * (depth + 4) if smaller)
};

struct Certificate {
    ell::WeierstrassCurve curve;
    std::uint32_t p = 0;
    PointQp p1;
    mpq_class x;
    mpq_class quad_disc;
    bool quad_disc_square = false;  // K = Q
    PointQp lifted;
    int depth = 0;
    int working_prec = 0;
    PointQp difference;
    std::optional<PointQp> witness;
    int agreement_level = 0;
    bool verified = false;
};

/// Throws HypothesisNotMet (P1 infinite or off the curve), TwoTorsionInput,
/// BadReduction, SupersingularInput, PolicyExhausted.
Certificate approximate_point(const ell::WeierstrassCurve& c, const PointQp& p1,
                              const ApproximationPolicy& policy = {});

/// x1 mod p^depth as the smallest nonnegative representative (scaled by the
/// power of p in the denominator when x1 is not integral).
mpq_class canonical_abscissa(const Padic& x1, int depth);

nlohmann::json to_json(const Padic& x);
Padic padic_from_json(std::uint32_t p, const nlohmann::json& j);
nlohmann::json to_json(const PointQp& P);
PointQp point_from_json(std::uint32_t p, const nlohmann::json& j);
std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

nlohmann::json to_json(const Certificate& cert);

struct VerifyResult {
    bool ok = false;
    std::vector<std::string> failures;
};
/// Recomputes every step from the JSON record alone.
VerifyResult verify_certificate(const nlohmann::json& cert);

// Local condition ----------------------------------------------------------------

struct StarReport {
    std::uint32_t p;
    int degree;
    int cyclotomic_degree;  // [Q_p(mu_p) : Q_p] = p - 1
    bool possible;
    std::string inequality;
    std::string ramification = "NOT-EVALUATED";
};

/// Only the cyclotomic necessary condition p - 1 <= degree is evaluated.
StarReport star_condition_report(const ell::WeierstrassCurve& c, std::uint32_t p, int degree);

}  // namespace hasse::padic
