#include "hasse/padic.hpp"

#include <algorithm>

#include "hasse/error.hpp"
#include "hasse/fp_matrix.hpp"

namespace hasse::padic {

mpz_class ppow(std::uint32_t p, int k) {
    if (k < 0) throw HypothesisNotMet("negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

int valuation(const mpz_class& n, std::uint32_t p) {
    if (n == 0) return kInf;
    mpz_class t = n;
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

namespace {

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inverse(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DivisionByZero("not invertible");
    return r;
}

// Strip the p-part of a nonzero integer: n = p^v * u.
std::pair<int, mpz_class> split(const mpz_class& n, std::uint32_t p) {
    mpz_class u = n;
    int v = 0;
    while (mpz_divisible_ui_p(u.get_mpz_t(), p)) {
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), p);
        ++v;
    }
    return {v, u};
}

int add_prec(int a, int b) {
    if (a >= kInf || b >= kInf) return kInf;
    return a + b;
}

}  // namespace

Padic Padic::normalized(std::uint32_t p, int val, mpz_class w, int rel) {
    Padic r;
    r.p_ = p;
    if (rel <= 0) {
        r.val_ = val + std::max(rel, 0);
        return r;
    }
    const auto m = ppow(p, rel);
    w = mod(w, m);
    if (w == 0) {
        r.val_ = val + rel;
        return r;
    }
    auto [v, u] = split(w, p);
    r.val_ = val + v;
    r.rel_ = rel - v;
    r.unit_ = mod(u, ppow(p, r.rel_));
    return r;
}

Padic Padic::zero(std::uint32_t p, int abs_prec) {
    Padic r;
    r.p_ = p;
    r.val_ = std::min(abs_prec, kInf);
    return r;
}

Padic Padic::from_integer(std::uint32_t p, const mpz_class& n, int abs_prec) {
    if (n == 0) return zero(p, abs_prec);
    auto [v, u] = split(n, p);
    return normalized(p, v, u, abs_prec - v);
}

Padic Padic::from_rational(std::uint32_t p, const mpq_class& q, int abs_prec) {
    if (q == 0) return zero(p, abs_prec);
    auto [vn, un] = split(q.get_num(), p);
    auto [vd, ud] = split(q.get_den(), p);
    const int val = vn - vd;
    const int rel = abs_prec - val;
    if (rel <= 0) return zero(p, abs_prec);
    const auto m = ppow(p, rel);
    return normalized(p, val, mod(un * inverse(mod(ud, m), m), m), rel);
}

Padic Padic::from_parts(std::uint32_t p, int val, const mpz_class& unit, int rel) {
    if (unit == 0) return zero(p, val);
    if (rel < 1 || unit < 0 || unit >= ppow(p, rel) || mpz_divisible_ui_p(unit.get_mpz_t(), p))
        throw ParseError("malformed p-adic digits");
    Padic r;
    r.p_ = p;
    r.val_ = val;
    r.unit_ = unit;
    r.rel_ = rel;
    return r;
}

std::uint32_t Padic::residue() const {
    if (unit_ == 0) return 0;
    return static_cast<std::uint32_t>(mpz_fdiv_ui(unit_.get_mpz_t(), p_));
}

void Padic::require_same_prime(const Padic& b) const {
    if (p_ != b.p_) throw GroupMismatch("p-adic numbers for different primes");
}

Padic Padic::operator-() const {
    if (unit_ == 0) return *this;
    Padic r = *this;
    r.unit_ = ppow(p_, rel_) - unit_;
    return r;
}

Padic Padic::operator+(const Padic& b) const {
    require_same_prime(b);
    const int n = std::min(abs_prec(), b.abs_prec());
    if (n >= kInf) return zero(p_);
    const int m = std::min(val_, b.val_);
    if (m >= n) return zero(p_, n);
    mpz_class w = 0;
    if (unit_ != 0 && val_ < n) w += unit_ * ppow(p_, val_ - m);
    if (b.unit_ != 0 && b.val_ < n) w += b.unit_ * ppow(p_, b.val_ - m);
    return normalized(p_, m, w, n - m);
}

Padic Padic::operator-(const Padic& b) const { return *this + (-b); }

Padic Padic::operator*(const Padic& b) const {
    require_same_prime(b);
    if (is_exact_zero() || b.is_exact_zero()) return zero(p_);
    if (unit_ == 0 && b.unit_ == 0) return zero(p_, add_prec(val_, b.val_));
    if (unit_ == 0) return zero(p_, add_prec(val_, b.val_));
    if (b.unit_ == 0) return zero(p_, add_prec(b.val_, val_));
    const int rel = std::min(rel_, b.rel_);
    return normalized(p_, val_ + b.val_, unit_ * b.unit_, rel);
}

Padic Padic::operator/(const Padic& b) const {
    require_same_prime(b);
    if (b.unit_ == 0) throw DivisionByZero("p-adic division by zero");
    if (is_exact_zero()) return zero(p_);
    if (unit_ == 0) return zero(p_, val_ - b.val_);
    const int rel = std::min(rel_, b.rel_);
    const auto m = ppow(p_, rel);
    return normalized(p_, val_ - b.val_, unit_ * inverse(mod(b.unit_, m), m), rel);
}

Padic Padic::operator+(const mpz_class& n) const {
    if (n == 0) return *this;
    const int prec = is_exact_zero() ? padic::valuation(n, p_) + kIntegerDigits : abs_prec();
    return *this + from_integer(p_, n, std::max(prec, padic::valuation(n, p_) + 1));
}

Padic Padic::operator-(const mpz_class& n) const { return *this + mpz_class(-n); }

Padic Padic::operator*(const mpz_class& n) const {
    if (n == 0) return zero(p_);
    auto [v, u] = split(n, p_);
    if (unit_ == 0) return zero(p_, add_prec(val_, v));
    return normalized(p_, val_ + v, unit_ * u, rel_);
}

Padic Padic::operator/(const mpz_class& n) const {
    if (n == 0) throw DivisionByZero("p-adic division by zero");
    auto [v, u] = split(n, p_);
    if (is_exact_zero()) return *this;
    if (unit_ == 0) return zero(p_, val_ - v);
    const auto m = ppow(p_, rel_);
    return normalized(p_, val_ - v, unit_ * inverse(mod(u, m), m), rel_);
}

Padic Padic::with_abs_prec(int n) const {
    if (n >= abs_prec()) return *this;
    if (unit_ == 0 || n <= val_) return zero(p_, n);
    return normalized(p_, val_, unit_, n - val_);
}

mpq_class Padic::to_rational() const {
    if (unit_ == 0) return 0;
    if (val_ >= 0) return mpq_class(unit_ * ppow(p_, val_));
    mpq_class q(unit_, ppow(p_, -val_));
    q.canonicalize();
    return q;
}

mpz_class Padic::to_integer() const {
    if (unit_ == 0) return 0;
    if (val_ < 0) throw HypothesisNotMet("negative valuation has no integer representative");
    return unit_ * ppow(p_, val_);
}

std::string Padic::to_string() const {
    const std::string ps = std::to_string(p_);
    if (is_exact_zero()) return "0";
    if (unit_ == 0) return "O(" + ps + "^" + std::to_string(val_) + ")";
    return unit_.get_str() + "*" + ps + "^" + std::to_string(val_) + " + O(" + ps + "^" +
           std::to_string(abs_prec()) + ")";
}

// ---------------------------------------------------------------------------

std::optional<std::pair<Padic, Padic>> sqrt_both(const Padic& x) {
    const auto p = x.p();
    if (x.is_zero()) {
        const int half = x.is_exact_zero() ? kInf : x.valuation() / 2;
        const auto z = Padic::zero(p, half);
        return std::make_pair(z, z);
    }
    if (x.valuation() % 2 != 0) return std::nullopt;
    const auto u0 = static_cast<std::uint64_t>(x.residue());
    std::uint64_t r0 = 0;
    for (std::uint64_t r = 1; r < p; ++r)
        if (r * r % p == u0) {
            r0 = r;
            break;
        }
    if (r0 == 0) return std::nullopt;
    const int rel = x.rel_prec();
    mpz_class r = static_cast<unsigned long>(r0);
    for (int prec = 1; prec < rel;) {
        prec = std::min(2 * prec, rel);
        const auto m = ppow(p, prec);
        const mpz_class f = r * r - x.unit();
        r = mod(r - f * inverse(mod(2 * r, m), m), m);
    }
    const int half = x.valuation() / 2;
    auto a = Padic::from_parts(p, half, mod(r, ppow(p, rel)), rel);
    auto b = -a;
    if (b.residue() < a.residue()) std::swap(a, b);
    return std::make_pair(a, b);
}

std::optional<Padic> sqrt(const Padic& x) {
    auto both = sqrt_both(x);
    if (!both) return std::nullopt;
    return both->first;
}

namespace {

mpz_class eval_mod(const std::vector<mpz_class>& f, const mpz_class& x, const mpz_class& m) {
    mpz_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod(acc * x + *it, m);
    return acc;
}

std::vector<mpz_class> derivative(const std::vector<mpz_class>& f) {
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    return d;
}

// Newton iteration from a simple root r0 mod p up to precision n.
mpz_class newton(const std::vector<mpz_class>& f, mpz_class r, std::uint32_t p, int n) {
    const auto df = derivative(f);
    for (int prec = 1; prec < n;) {
        prec = std::min(2 * prec, n);
        const auto m = ppow(p, prec);
        r = mod(r - eval_mod(f, r, m) * inverse(eval_mod(df, r, m), m), m);
    }
    return mod(r, ppow(p, n));
}

// g(a + p Y) modulo m.
std::vector<mpz_class> shift_and_scale(const std::vector<mpz_class>& g, const mpz_class& a,
                                       std::uint32_t p, const mpz_class& m) {
    std::vector<mpz_class> h(g);
    const std::size_t n = h.size();
    // Taylor shift by repeated synthetic division.
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) h[j - 1] = mod(h[j - 1] + a * h[j], m);
    mpz_class pj = 1;
    for (auto& c : h) {
        c = mod(c * pj, m);
        pj *= p;
    }
    return h;
}

void search(std::vector<mpz_class> g, std::uint32_t p, int m, const mpz_class& base, int shift,
            std::optional<std::uint32_t> residue, std::vector<ZpRoot>& out) {
    int content = m;
    for (const auto& c : g)
        if (c != 0) content = std::min(content, valuation(c, p));
    if (content >= m) throw PrecisionExhausted("polynomial vanishes to working precision");
    const auto pc = ppow(p, content);
    m -= content;
    const auto pm = ppow(p, m);
    for (auto& c : g) {
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pc.get_mpz_t());
        c = mod(c, pm);
    }
    const mpz_class pp = p;
    const auto dg = derivative(g);
    const auto scale = ppow(p, shift);
    for (std::uint32_t a = 0; a < p; ++a) {
        if (residue && a != *residue) continue;
        const mpz_class am = a;
        if (eval_mod(g, am, pp) != 0) continue;
        if (eval_mod(dg, am, pp) != 0) {
            out.push_back({base + scale * newton(g, am, p, m), shift + m});
        } else {
            search(shift_and_scale(g, am, p, pm), p, m, base + scale * am, shift + 1,
                   std::nullopt, out);
        }
    }
}

}  // namespace

Padic hensel_root(const std::vector<mpz_class>& f, const mpz_class& r0, std::uint32_t p, int n) {
    if (n < 1) throw HypothesisNotMet("precision must be positive");
    const mpz_class pp = p;
    if (eval_mod(f, r0, pp) != 0) throw HypothesisNotMet("r0 is not a root mod p");
    if (eval_mod(derivative(f), r0, pp) == 0)
        throw EtaleFailure("root is not simple mod " + std::to_string(p));
    return Padic::from_integer(p, newton(f, mod(r0, pp), p, n), n);
}

std::vector<ZpRoot> zp_roots(std::vector<mpz_class> coeffs, std::uint32_t p, int m,
                             std::optional<std::uint32_t> residue) {
    if (m < 1) throw PrecisionExhausted("no precision");
    const auto pm = ppow(p, m);
    for (auto& c : coeffs) c = mod(c, pm);
    std::vector<ZpRoot> out;
    search(std::move(coeffs), p, m, 0, 0, residue, out);
    std::sort(out.begin(), out.end(),
              [](const ZpRoot& a, const ZpRoot& b) { return a.value < b.value; });
    return out;
}

}  // namespace hasse::padic
