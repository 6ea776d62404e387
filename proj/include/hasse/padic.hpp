#pragma once

// Fixed-precision p-adic numbers (capped relative precision) with explicit
// absolute-precision bookkeeping, square roots, Hensel lifting and a root
// finder for integer polynomials over Z_p.
//
// A nonzero value is p^val * unit with unit known modulo p^rel; its absolute
// precision is val + rel. A zero is either exact or known to be zero modulo
// p^abs.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hasse::padic {

inline constexpr int kInf = 1 << 24;
/// Digits carried when an integer is added to an exact zero.
inline constexpr int kIntegerDigits = 256;

mpz_class ppow(std::uint32_t p, int k);
/// p-adic valuation of a nonzero integer.
int valuation(const mpz_class& n, std::uint32_t p);

class Padic {
public:
    Padic() = default;

    static Padic zero(std::uint32_t p, int abs_prec = kInf);
    static Padic from_integer(std::uint32_t p, const mpz_class& n, int abs_prec);
    static Padic from_rational(std::uint32_t p, const mpq_class& q, int abs_prec);
    /// Validating constructor used by deserialization. unit = 0 encodes a
    /// zero known to absolute precision val.
    static Padic from_parts(std::uint32_t p, int val, const mpz_class& unit, int rel);

    std::uint32_t p() const { return p_; }
    /// For a zero: its absolute precision (kInf when exact).
    int valuation() const { return val_; }
    const mpz_class& unit() const { return unit_; }
    int rel_prec() const { return rel_; }
    int abs_prec() const { return unit_ == 0 ? val_ : val_ + rel_; }
    bool is_zero() const { return unit_ == 0; }
    bool is_exact_zero() const { return unit_ == 0 && val_ >= kInf; }
    /// Leading digit (0 for a zero).
    std::uint32_t residue() const;

    Padic operator-() const;
    Padic operator+(const Padic& b) const;
    Padic operator-(const Padic& b) const;
    Padic operator*(const Padic& b) const;
    /// Throws DivisionByZero when b is zero (exactly or to its precision).
    Padic operator/(const Padic& b) const;

    Padic operator+(const mpz_class& n) const;
    Padic operator-(const mpz_class& n) const;
    Padic operator*(const mpz_class& n) const;
    Padic operator/(const mpz_class& n) const;

    /// Lower the absolute precision to at most n.
    Padic with_abs_prec(int n) const;

    /// The stored representative as a rational number.
    mpq_class to_rational() const;
    /// Integer representative in [0, p^abs). Requires valuation >= 0.
    mpz_class to_integer() const;

    /// Same value to the common precision.
    bool equals(const Padic& b) const { return (*this - b).is_zero(); }
    std::string to_string() const;

private:
    static Padic normalized(std::uint32_t p, int val, mpz_class w, int rel);
    void require_same_prime(const Padic& b) const;

    std::uint32_t p_ = 0;
    int val_ = kInf;
    mpz_class unit_ = 0;
    int rel_ = 0;
};

/// Both square roots, the one whose leading digit is smaller first.
/// Empty when the valuation is odd or the leading unit is a non-residue.
std::optional<std::pair<Padic, Padic>> sqrt_both(const Padic& x);
std::optional<Padic> sqrt(const Padic& x);

/// Root of f congruent to r0 mod p, correct to n digits. Throws
/// HypothesisNotMet when f(r0) is nonzero mod p and EtaleFailure when
/// f'(r0) vanishes mod p.
Padic hensel_root(const std::vector<mpz_class>& f, const mpz_class& r0, std::uint32_t p, int n);

struct ZpRoot {
    mpz_class value;  // representative in [0, p^prec)
    int prec;
};

/// All roots in Z_p of the polynomial with the given integer coefficients,
/// known modulo p^m. When `residue` is set only roots congruent to it mod p are
/// returned. Throws PrecisionExhausted when m is too small to separate them.
std::vector<ZpRoot> zp_roots(std::vector<mpz_class> coeffs, std::uint32_t p, int m,
                             std::optional<std::uint32_t> residue = std::nullopt);

}  // namespace hasse::padic
