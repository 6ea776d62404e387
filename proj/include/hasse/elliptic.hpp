#pragma once

// Elliptic curves over Q in long Weierstrass form
//   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with exact reduction data and division polynomials.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hasse::ell {

/// Integer polynomial, coefficient of x^i at index i. Trailing zeros trimmed.
using Poly = std::vector<mpz_class>;

Poly poly_trim(Poly f);
Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_mul(const Poly& f, const Poly& g);
Poly poly_scale(const Poly& f, const mpz_class& s);
int poly_degree(const Poly& f);  // -1 for the zero polynomial
mpz_class poly_eval(const Poly& f, const mpz_class& x);
std::string poly_to_string(const Poly& f);

struct WeierstrassCurve {
    std::string label;
    long long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    mpz_class b2, b4, b6, b8, c4, c6, disc;

    /// j-invariant c4^3 / disc.
    mpq_class j_invariant() const;
    /// 4x^3 + b2 x^2 + 2 b4 x + b6: the discriminant of the y-quadratic at x.
    Poly quad_disc_poly() const;
};

/// Throws SingularCurve when the discriminant vanishes.
WeierstrassCurve make_curve(std::string label, long long a1, long long a2, long long a3,
                            long long a4, long long a6);

const mpz_class& discriminant(const WeierstrassCurve& c);

/// Whether j is one of the 13 rational CM j-invariants.
bool has_cm(const WeierstrassCurve& c);

/// #E(F_p) by x-enumeration and quadratic-character counting. p odd, good.
std::uint64_t point_count(const WeierstrassCurve& c, std::uint32_t p);
/// #E(F_p) by enumerating every (x, y). Any prime p (including 2) with good
/// reduction of the model.
std::uint64_t point_count_naive(const WeierstrassCurve& c, std::uint32_t p);

bool good_reduction(const WeierstrassCurve& c, std::uint32_t p);
/// a_p = p + 1 - #E(F_p). Throws BadReduction; uses point_count for odd p.
long long ap(const WeierstrassCurve& c, std::uint32_t p);

enum class Reduction { GoodOrdinary, GoodSupersingular, Bad };
std::string to_string(Reduction r);
Reduction reduction_type(const WeierstrassCurve& c, std::uint32_t p);

/// psi_n = f_n for odd n and psi_n = psi_2 f_n for even n, with
/// psi_2 = 2y + a1 x + a3 and psi_2^2 = quad_disc_poly().
struct DivisionPolynomial {
    Poly f;
    bool y_factor;  // true when n is even
};
DivisionPolynomial division_polynomial(const WeierstrassCurve& c, int n);

/// x(nP) = phi_n(x) / psi_n(x)^2 as polynomials in x.
struct MultiplicationMap {
    Poly phi;
    Poly psi_sq;
};
MultiplicationMap multiplication_x_map(const WeierstrassCurve& c, int n);

/// Fraction of good odd primes <= bound with ordinary reduction.
double ordinary_density_sample(const WeierstrassCurve& c, std::uint32_t bound);

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

// Prime-by-prime elimination scan -------------------------------------------------

enum class Reason { Bad, SupersingularOutOfScope, DegreeBound, SmallPrimeNotCovered };
std::string to_string(Reason r);

struct PrimeVerdict {
    std::uint32_t p;
    Reduction reduction;
    std::optional<long long> ap;  // present for good reduction
    bool eliminated;
    Reason reason;
};

/// p = 2 is always SMALL-PRIME-NOT-COVERED. For odd good-ordinary p the prime
/// is eliminated iff p - 1 > max(2, degree).
PrimeVerdict prime_verdict(const WeierstrassCurve& c, std::uint32_t p, int degree = 1);

/// One verdict per odd prime p <= bound, ordered by p.
std::vector<PrimeVerdict> elimination_scan(const WeierstrassCurve& c, std::uint32_t bound,
                                         int degree = 1);

// Curve files ---------------------------------------------------------------------

/// Lines "label,a1,a2,a3,a4,a6"; blank lines and lines starting with '#' are
/// skipped. Throws ParseError naming the 1-based line number.
std::vector<WeierstrassCurve> parse_curves(const std::string& text);
std::vector<WeierstrassCurve> load_curves(const std::string& path);
const WeierstrassCurve& find_curve(const std::vector<WeierstrassCurve>& curves,
                                   const std::string& label);

}  // namespace hasse::ell
