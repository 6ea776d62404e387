#include "hasse/elliptic.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hasse/error.hpp"
#include "hasse/fp_matrix.hpp"

namespace hasse::ell {

// ---------------------------------------------------------------------------
// Polynomials

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_add(const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] += g[i];
    return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
    return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& f, const Poly& g) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& f, const mpz_class& s) {
    Poly r(f);
    for (auto& c : r) c *= s;
    return poly_trim(std::move(r));
}

int poly_degree(const Poly& f) {
    const auto t = poly_trim(f);
    return static_cast<int>(t.size()) - 1;
}

mpz_class poly_eval(const Poly& f, const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string poly_to_string(const Poly& f) {
    if (f.empty()) return "0";
    std::string out;
    for (std::size_t k = f.size(); k-- > 0;) {
        if (f[k] == 0) continue;
        mpz_class c = f[k];
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        c = abs(c);
        if (c != 1 || k == 0) out += c.get_str();
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curves

mpq_class WeierstrassCurve::j_invariant() const {
    mpq_class j(c4 * c4 * c4, disc);
    j.canonicalize();
    return j;
}

Poly WeierstrassCurve::quad_disc_poly() const { return poly_trim({b6, 2 * b4, b2, 4}); }

WeierstrassCurve make_curve(std::string label, long long a1, long long a2, long long a3,
                            long long a4, long long a6) {
    WeierstrassCurve c;
    c.label = std::move(label);
    c.a1 = a1;
    c.a2 = a2;
    c.a3 = a3;
    c.a4 = a4;
    c.a6 = a6;
    const mpz_class A1(static_cast<long>(a1)), A2(static_cast<long>(a2)),
        A3(static_cast<long>(a3)), A4(static_cast<long>(a4)), A6(static_cast<long>(a6));
    c.b2 = A1 * A1 + 4 * A2;
    c.b4 = 2 * A4 + A1 * A3;
    c.b6 = A3 * A3 + 4 * A6;
    c.b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    c.c4 = c.b2 * c.b2 - 24 * c.b4;
    c.c6 = -c.b2 * c.b2 * c.b2 + 36 * c.b2 * c.b4 - 216 * c.b6;
    c.disc = -c.b2 * c.b2 * c.b8 - 8 * c.b4 * c.b4 * c.b4 - 27 * c.b6 * c.b6 +
             9 * c.b2 * c.b4 * c.b6;
    if (c.disc == 0) throw SingularCurve("curve '" + c.label + "' has zero discriminant");
    return c;
}

const mpz_class& discriminant(const WeierstrassCurve& c) { return c.disc; }

bool has_cm(const WeierstrassCurve& c) {
    static const std::vector<mpz_class> cm_j = {
        mpz_class(0),           mpz_class(1728),      mpz_class(-3375),
        mpz_class(8000),        mpz_class(-32768),    mpz_class(54000),
        mpz_class(287496),      mpz_class(-884736),   mpz_class(-12288000),
        mpz_class(16581375),    mpz_class(-884736000),
        mpz_class("-147197952000"), mpz_class("-262537412640768000")};
    const auto j = c.j_invariant();
    if (j.get_den() != 1) return false;
    return std::find(cm_j.begin(), cm_j.end(), j.get_num()) != cm_j.end();
}

namespace {

std::uint32_t mod_p(const mpz_class& v, std::uint32_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t mod_p(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

}  // namespace

bool good_reduction(const WeierstrassCurve& c, std::uint32_t p) { return mod_p(c.disc, p) != 0; }

std::uint64_t point_count(const WeierstrassCurve& c, std::uint32_t p) {
    if (p == 2 || !fp::is_prime(p)) throw NotPrime("point_count needs an odd prime");
    if (!good_reduction(c, p)) throw BadReduction("bad reduction at " + std::to_string(p));
    // chi[t] = 1 + (t/p): number of y with y^2 = t.
    std::vector<std::uint8_t> roots(p, 0);
    for (std::uint64_t y = 0; y < p; ++y) ++roots[y * y % p];
    const std::uint64_t b2 = mod_p(c.b2, p), b4 = mod_p(c.b4, p), b6 = mod_p(c.b6, p);
    std::uint64_t count = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t d = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
        count += roots[d];
    }
    return count;
}

std::uint64_t point_count_naive(const WeierstrassCurve& c, std::uint32_t p) {
    if (!fp::is_prime(p)) throw NotPrime("point_count_naive needs a prime");
    if (!good_reduction(c, p)) throw BadReduction("bad reduction at " + std::to_string(p));
    const std::uint64_t a1 = mod_p(c.a1, p), a2 = mod_p(c.a2, p), a3 = mod_p(c.a3, p),
                        a4 = mod_p(c.a4, p), a6 = mod_p(c.a6, p);
    std::uint64_t count = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t rhs = (((x + a2) * x % p + a4) * x % p + a6) % p;
        for (std::uint64_t y = 0; y < p; ++y) {
            const std::uint64_t lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

long long ap(const WeierstrassCurve& c, std::uint32_t p) {
    if (!fp::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    const std::uint64_t n = p == 2 ? point_count_naive(c, p) : point_count(c, p);
    return static_cast<long long>(p) + 1 - static_cast<long long>(n);
}

std::string to_string(Reduction r) {
    switch (r) {
        case Reduction::GoodOrdinary: return "good-ordinary";
        case Reduction::GoodSupersingular: return "good-supersingular";
        case Reduction::Bad: return "bad";
    }
    return "?";
}

Reduction reduction_type(const WeierstrassCurve& c, std::uint32_t p) {
    if (!good_reduction(c, p)) return Reduction::Bad;
    return ap(c, p) % static_cast<long long>(p) == 0 ? Reduction::GoodSupersingular
                                                     : Reduction::GoodOrdinary;
}

// ---------------------------------------------------------------------------
// Division polynomials

namespace {

std::vector<Poly> division_table(const WeierstrassCurve& c, int n) {
    const Poly B = c.quad_disc_poly();
    const Poly B2 = poly_mul(B, B);
    std::vector<Poly> f(static_cast<std::size_t>(std::max(n, 4)) + 1);
    f[0] = {};
    f[1] = {1};
    f[2] = {1};
    f[3] = poly_trim({c.b8, 3 * c.b6, 3 * c.b4, c.b2, 3});
    f[4] = poly_trim({c.b4 * c.b8 - c.b6 * c.b6, c.b2 * c.b8 - c.b4 * c.b6, 10 * c.b8,
                      10 * c.b6, 5 * c.b4, c.b2, 2});
    auto cube = [](const Poly& g) { return poly_mul(g, poly_mul(g, g)); };
    auto sq = [](const Poly& g) { return poly_mul(g, g); };
    for (int k = 5; k <= n; ++k) {
        const int m = k / 2;
        if (k % 2 == 1) {
            Poly t1 = poly_mul(f[m + 2], cube(f[m]));
            Poly t2 = poly_mul(f[m - 1], cube(f[m + 1]));
            if (m % 2 == 0) t1 = poly_mul(B2, t1);
            else t2 = poly_mul(B2, t2);
            f[k] = poly_sub(t1, t2);
        } else {
            f[k] = poly_mul(f[m], poly_sub(poly_mul(f[m + 2], sq(f[m - 1])),
                                           poly_mul(f[m - 2], sq(f[m + 1]))));
        }
    }
    return f;
}

}  // namespace

DivisionPolynomial division_polynomial(const WeierstrassCurve& c, int n) {
    if (n < 1) throw HypothesisNotMet("division polynomial index must be >= 1");
    auto f = division_table(c, n);
    return {f[n], n % 2 == 0};
}

MultiplicationMap multiplication_x_map(const WeierstrassCurve& c, int n) {
    if (n < 1) throw HypothesisNotMet("multiplier must be >= 1");
    if (n == 1) return {{0, 1}, {1}};
    const auto f = division_table(c, n + 1);
    const Poly B = c.quad_disc_poly();
    const Poly x = {0, 1};
    const Poly fn2 = poly_mul(f[n], f[n]);
    const Poly cross = poly_mul(f[n + 1], f[n - 1]);
    MultiplicationMap out;
    if (n % 2 == 1) {
        out.psi_sq = fn2;
        out.phi = poly_sub(poly_mul(x, fn2), poly_mul(B, cross));
    } else {
        out.psi_sq = poly_mul(B, fn2);
        out.phi = poly_sub(poly_mul(x, out.psi_sq), cross);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scans

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
    std::vector<std::uint32_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

double ordinary_density_sample(const WeierstrassCurve& c, std::uint32_t bound) {
    if (bound < 10) throw HypothesisNotMet("density sample needs bound >= 10");
    std::size_t good = 0, ordinary = 0;
    for (auto p : primes_up_to(bound)) {
        if (p == 2 || !good_reduction(c, p)) continue;
        ++good;
        if (reduction_type(c, p) == Reduction::GoodOrdinary) ++ordinary;
    }
    return good == 0 ? 0.0 : static_cast<double>(ordinary) / static_cast<double>(good);
}

std::string to_string(Reason r) {
    switch (r) {
        case Reason::Bad: return "BAD";
        case Reason::SupersingularOutOfScope: return "SUPERSINGULAR-OUT-OF-SCOPE";
        case Reason::DegreeBound: return "DEGREE-BOUND";
        case Reason::SmallPrimeNotCovered: return "SMALL-PRIME-NOT-COVERED";
    }
    return "?";
}

PrimeVerdict prime_verdict(const WeierstrassCurve& c, std::uint32_t p, int degree) {
    if (!fp::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (degree < 1) throw HypothesisNotMet("degree parameter must be >= 1");
    PrimeVerdict v{p, reduction_type(c, p), std::nullopt, false, Reason::SmallPrimeNotCovered};
    if (v.reduction != Reduction::Bad) v.ap = ap(c, p);
    if (p == 2) return v;
    switch (v.reduction) {
        case Reduction::Bad: v.reason = Reason::Bad; break;
        case Reduction::GoodSupersingular: v.reason = Reason::SupersingularOutOfScope; break;
        case Reduction::GoodOrdinary:
            if (static_cast<long long>(p) - 1 > std::max(2, degree)) {
                v.eliminated = true;
                v.reason = Reason::DegreeBound;
            }
            break;
    }
    return v;
}

std::vector<PrimeVerdict> elimination_scan(const WeierstrassCurve& c, std::uint32_t bound,
                                         int degree) {
    if (bound < 3) throw HypothesisNotMet("scan bound must be >= 3");
    std::vector<std::uint32_t> primes;
    for (auto p : primes_up_to(bound))
        if (p != 2) primes.push_back(p);
    std::vector<PrimeVerdict> out(primes.size());
    const auto count = static_cast<long>(primes.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) out[i] = prime_verdict(c, primes[i], degree);
    return out;
}

// ---------------------------------------------------------------------------
// Curve files

std::vector<WeierstrassCurve> parse_curves(const std::string& text) {
    std::vector<WeierstrassCurve> out;
    std::set<std::string> labels;
    std::istringstream in(text);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        auto fail = [&](const std::string& why) {
            throw ParseError("line " + std::to_string(lineno) + ": " + why);
        };
        if (fields.size() != 6) fail("expected label,a1,a2,a3,a4,a6");
        if (fields[0].empty()) fail("empty label");
        long long a[5];
        for (int i = 0; i < 5; ++i) {
            const auto& s = fields[i + 1];
            const auto res = std::from_chars(s.data(), s.data() + s.size(), a[i]);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                fail("bad integer '" + s + "'");
        }
        if (!labels.insert(fields[0]).second) fail("duplicate label '" + fields[0] + "'");
        try {
            out.push_back(make_curve(fields[0], a[0], a[1], a[2], a[3], a[4]));
        } catch (const SingularCurve& e) {
            fail("singular curve '" + fields[0] + "'");
        }
    }
    return out;
}

std::vector<WeierstrassCurve> load_curves(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open curve file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_curves(buf.str());
}

const WeierstrassCurve& find_curve(const std::vector<WeierstrassCurve>& curves,
                                   const std::string& label) {
    for (const auto& c : curves)
        if (c.label == label) return c;
    throw ParseError("no curve labelled '" + label + "'");
}

}  // namespace hasse::ell
