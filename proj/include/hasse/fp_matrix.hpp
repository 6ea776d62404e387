#pragma once

// Dense linear algebra over the prime field F_p.
//
// Entries are stored as residues in [0, p) with p an odd prime below 2^15, so
// a product of two residues fits in 30 bits and a multiply-accumulate of two
// such products still fits in a uint32_t.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace hasse::fp {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

inline constexpr std::uint32_t kMaxModulus = 1u << 15;

bool is_prime(std::uint64_t n);

/// Throws NotPrime unless p is an odd prime below kMaxModulus.
void check_modulus(std::uint32_t p);

inline Elem reduce(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<Elem>(r < 0 ? r + p : r);
}

Elem pow_mod(Elem base, std::uint64_t exp, std::uint32_t p);
Elem inv_mod(Elem a, std::uint32_t p);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static Matrix identity(std::uint32_t p, std::size_t n);
    static Matrix from_rows(std::uint32_t p,
                            std::initializer_list<std::initializer_list<long long>> rows);
    static Matrix from_columns(std::uint32_t p, std::size_t rows, std::span<const Vec> cols);
    static Matrix from_row_vectors(std::uint32_t p, std::size_t cols, std::span<const Vec> rows);

    std::uint32_t modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) { (*this)(r, c) = reduce(v, p_); }

    std::span<const Elem> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> data() const { return data_; }

    Vec column(std::size_t c) const;

    Matrix operator*(const Matrix& rhs) const;
    Vec operator*(std::span<const Elem> v) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Elem s) const;
    Matrix transpose() const;
    /// Kronecker product; row index of the result is i * rhs.rows() + k.
    Matrix kron(const Matrix& rhs) const;

    bool is_zero() const;
    bool operator==(const Matrix& rhs) const = default;

private:
    std::uint32_t p_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

// Vector helpers (all operands share the modulus p).
Vec add(std::span<const Elem> a, std::span<const Elem> b, std::uint32_t p);
Vec sub(std::span<const Elem> a, std::span<const Elem> b, std::uint32_t p);
Vec scale(std::span<const Elem> a, Elem s, std::uint32_t p);
void axpy(std::span<Elem> y, Elem a, std::span<const Elem> x, std::uint32_t p);
bool is_zero(std::span<const Elem> v);

// Row reduction to reduced row echelon form, in place. Returns the pivot
// columns in increasing order. The serial and OpenMP kernels produce
// identical output; rref() picks one by problem size.
std::vector<std::size_t> rref_serial(Matrix& m);
std::vector<std::size_t> rref_parallel(Matrix& m);
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(const Matrix& m);
std::vector<Vec> kernel_basis(const Matrix& m);
std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b);
std::optional<Matrix> invert(const Matrix& m);
Elem determinant(const Matrix& m);

/// Incrementally maintained row space. Used for streaming large
/// overdetermined systems and for rank-modulo-subspace questions.
class RowBasis {
public:
    RowBasis(std::uint32_t p, std::size_t cols);

    /// Reduces v against the basis; returns true if it was independent
    /// (and adds it).
    bool insert(Vec v);
    Vec reduce(Vec v) const;
    bool contains(std::span<const Elem> v) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<Vec>& rows() const { return rows_; }
    /// Kernel of the matrix whose rows span this space.
    std::vector<Vec> null_space() const;

private:
    std::uint32_t p_;
    std::size_t cols_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace hasse::fp
