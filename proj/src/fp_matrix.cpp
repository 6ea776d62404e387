#include "hasse/fp_matrix.hpp"

#include <algorithm>
#include <string>

#include "hasse/error.hpp"

namespace hasse::fp {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

void check_modulus(std::uint32_t p) {
    if (p == 2 || p >= kMaxModulus || !is_prime(p))
        throw NotPrime("modulus " + std::to_string(p) + " is not an odd prime below 2^15");
}

Elem pow_mod(Elem base, std::uint64_t exp, std::uint32_t p) {
    std::uint64_t result = 1 % p;
    std::uint64_t b = base % p;
    while (exp > 0) {
        if (exp & 1u) result = result * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<Elem>(result);
}

Elem inv_mod(Elem a, std::uint32_t p) {
    if (a % p == 0) throw DivisionByZero("inverse of 0 mod " + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    check_modulus(p);
}

Matrix Matrix::identity(std::uint32_t p, std::size_t n) {
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(std::uint32_t p,
                         std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t nr = rows.size();
    const std::size_t nc = nr ? rows.begin()->size() : 0;
    Matrix m(p, nr, nc);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != nc) throw DimensionMismatch("ragged row list");
        std::size_t j = 0;
        for (long long v : r) m.set(i, j++, v);
        ++i;
    }
    return m;
}

Matrix Matrix::from_columns(std::uint32_t p, std::size_t rows, std::span<const Vec> cols) {
    Matrix m(p, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionMismatch("column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i] % p;
    }
    return m;
}

Matrix Matrix::from_row_vectors(std::uint32_t p, std::size_t cols, std::span<const Vec> rows) {
    Matrix m(p, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("row length");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_) throw DimensionMismatch("matrix product");
    Matrix out(p_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        auto orow = out.row(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = (*this)(i, k);
            if (a != 0) axpy(orow, a, rhs.row(k), p_);
        }
    }
    return out;
}

Vec Matrix::operator*(std::span<const Elem> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product");
    Vec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < cols_; ++k) {
            acc += static_cast<std::uint64_t>((*this)(i, k)) * v[k];
            if ((k & 1023u) == 1023u) acc %= p_;
        }
        out[i] = static_cast<Elem>(acc % p_);
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw DimensionMismatch("matrix sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + rhs.data_[i]) % p_;
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw DimensionMismatch("matrix difference");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = (data_[i] + p_ - rhs.data_[i]) % p_;
    return out;
}

Matrix Matrix::scaled(Elem s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = static_cast<Elem>(static_cast<std::uint64_t>(x) * s % p_);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Matrix Matrix::kron(const Matrix& rhs) const {
    if (p_ != rhs.p_) throw DimensionMismatch("kronecker product modulus");
    Matrix out(p_, rows_ * rhs.rows_, cols_ * rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Elem a = (*this)(i, j);
            for (std::size_t k = 0; k < rhs.rows_; ++k)
                for (std::size_t l = 0; l < rhs.cols_; ++l)
                    out(i * rhs.rows_ + k, j * rhs.cols_ + l) =
                        static_cast<Elem>(static_cast<std::uint64_t>(a) * rhs(k, l) % p_);
        }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

Vec add(std::span<const Elem> a, std::span<const Elem> b, std::uint32_t p) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sum");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
    return out;
}

Vec sub(std::span<const Elem> a, std::span<const Elem> b, std::uint32_t p) {
    if (a.size() != b.size()) throw DimensionMismatch("vector difference");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + p - b[i]) % p;
    return out;
}

Vec scale(std::span<const Elem> a, Elem s, std::uint32_t p) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<Elem>(static_cast<std::uint64_t>(a[i]) * s % p);
    return out;
}

void axpy(std::span<Elem> y, Elem a, std::span<const Elem> x, std::uint32_t p) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + a * x[i]) % p;
}

bool is_zero(std::span<const Elem> v) {
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

std::size_t rank(const Matrix& m) {
    Matrix work = m;
    return rref(work).size();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
    Matrix work = m;
    const auto pivots = rref(work);
    const std::uint32_t p = m.modulus();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = (p - work(r, free)) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b) {
    if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
    const std::uint32_t p = m.modulus();
    Matrix aug(p, m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto src = m.row(i);
        std::copy(src.begin(), src.end(), aug.row(i).begin());
        aug(i, m.cols()) = b[i] % p;
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

std::optional<Matrix> invert(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("invert requires a square matrix");
    const std::size_t n = m.rows();
    const std::uint32_t p = m.modulus();
    Matrix aug(p, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Elem determinant(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant requires a square matrix");
    const std::uint32_t p = m.modulus();
    const std::size_t n = m.rows();
    Matrix w = m;
    std::uint64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && w(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(piv, j), w(c, j));
            det = (p - det) % p;
        }
        det = det * w(c, c) % p;
        const Elem inv = inv_mod(w(c, c), p);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (w(r, c) == 0) continue;
            const Elem f = static_cast<Elem>(static_cast<std::uint64_t>(w(r, c)) * inv % p);
            axpy(w.row(r), p - f, w.row(c), p);
        }
    }
    return static_cast<Elem>(det);
}

RowBasis::RowBasis(std::uint32_t p, std::size_t cols) : p_(p), cols_(cols) { check_modulus(p); }

Vec RowBasis::reduce(Vec v) const {
    if (v.size() != cols_) throw DimensionMismatch("row length");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Elem c = v[pivots_[i]];
        if (c != 0) axpy(v, p_ - c, rows_[i], p_);
    }
    return v;
}

bool RowBasis::insert(Vec v) {
    v = reduce(std::move(v));
    auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (it == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const Elem inv = inv_mod(*it, p_);
    for (auto& x : v) x = static_cast<Elem>(static_cast<std::uint64_t>(x) * inv % p_);
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

bool RowBasis::contains(std::span<const Elem> v) const {
    return is_zero(reduce(Vec(v.begin(), v.end())));
}

std::vector<Vec> RowBasis::null_space() const {
    if (rows_.empty()) {
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < cols_; ++i) {
            Vec e(cols_, 0);
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    return kernel_basis(Matrix::from_row_vectors(p_, cols_, rows_));
}

}  // namespace hasse::fp
