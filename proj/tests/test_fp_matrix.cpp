#include <random>

#include "doctest.h"
#include "hasse/error.hpp"
#include "hasse/fp_matrix.hpp"

using namespace hasse;
using fp::Matrix;

namespace {

// Kernel size by enumerating every vector of F_p^n. Only for tiny shapes.
std::size_t brute_kernel_size(const Matrix& m) {
    const std::uint32_t p = m.modulus();
    std::size_t total = 1;
    for (std::size_t i = 0; i < m.cols(); ++i) total *= p;
    std::size_t count = 0;
    for (std::size_t code = 0; code < total; ++code) {
        fp::Vec v(m.cols());
        std::size_t c = code;
        for (auto& e : v) {
            e = static_cast<fp::Elem>(c % p);
            c /= p;
        }
        if (fp::is_zero(m * std::span<const fp::Elem>(v))) ++count;
    }
    return count;
}

std::size_t log_p(std::size_t n, std::uint32_t p) {
    std::size_t k = 0;
    while (n > 1) {
        n /= p;
        ++k;
    }
    return k;
}

Matrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<fp::Elem>(rng() % p);
    return m;
}

}  // namespace

TEST_CASE("modulus must be prime") {
    CHECK_THROWS_AS(Matrix(4, 2, 2), NotPrime);
    CHECK_THROWS_AS(Matrix(1, 1, 1), NotPrime);
    CHECK_NOTHROW(Matrix(7, 1, 1));
}

TEST_CASE("kernel basis fixtures") {
    CHECK(fp::kernel_basis(Matrix::identity(3, 3)).empty());
    CHECK(fp::kernel_basis(Matrix(5, 2, 2)).size() == 2);
    const auto m = Matrix::from_rows(5, {{1, 2}, {2, 4}});
    const auto k = fp::kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(fp::is_zero(m * std::span<const fp::Elem>(k[0])));
    CHECK(brute_kernel_size(m) == 5);
    CHECK(fp::rank(m) == 1);
}

TEST_CASE("solve fixtures") {
    const fp::Vec b{2, 1};
    CHECK(*fp::solve(Matrix::identity(3, 2), b) == b);
    CHECK_FALSE(fp::solve(Matrix(3, 2, 2), b).has_value());
    const auto x = fp::solve(Matrix::from_rows(3, {{1, 1}, {0, 1}}), b);
    REQUIRE(x);
    CHECK(*x == fp::Vec{1, 1});
    CHECK_THROWS_AS(fp::solve(Matrix::identity(3, 2), fp::Vec{1, 1, 1}), DimensionMismatch);
}

TEST_CASE("inverse fixtures") {
    for (std::uint32_t p : {3u, 5u, 7u, 101u}) {
        CHECK(*fp::invert(Matrix::identity(p, 4)) == Matrix::identity(p, 4));
        const auto u = fp::invert(Matrix::from_rows(p, {{1, 1}, {0, 1}}));
        REQUIRE(u);
        CHECK(*u == Matrix::from_rows(p, {{1, p - 1}, {0, 1}}));
    }
    CHECK_FALSE(fp::invert(Matrix::from_rows(5, {{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("rank-nullity against brute-force kernel count") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 5;
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        auto m = random_matrix(p, r, c, rng);
        if (trial % 3 == 0 && r > 1)
            for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j);
        const auto k = fp::kernel_basis(m);
        CHECK(fp::rank(m) + k.size() == c);
        CHECK(log_p(brute_kernel_size(m), p) == k.size());
        for (const auto& v : k) CHECK(fp::is_zero(m * std::span<const fp::Elem>(v)));
    }
}

TEST_CASE("serial and parallel elimination agree") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 101;
        const std::size_t r = 20 + rng() % 200, c = 20 + rng() % 200;
        auto a = random_matrix(p, r, c, rng);
        // low rank: every row a combination of the first few
        for (std::size_t i = 5; i < r; i += 2) {
            const auto s = static_cast<fp::Elem>(rng() % p);
            for (std::size_t j = 0; j < c; ++j) a(i, j) = static_cast<fp::Elem>((a(i % 5, j) * s) % p);
        }
        auto b = a;
        const auto pa = fp::rref_serial(a);
        const auto pb = fp::rref_parallel(b);
        CHECK(pa == pb);
        CHECK(a == b);
    }
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_matrix(7, 3, 3, rng), b = random_matrix(7, 3, 3, rng);
        CHECK(fp::determinant(a * b) == (fp::determinant(a) * fp::determinant(b)) % 7);
        CHECK((fp::determinant(a) == 0) == !fp::invert(a).has_value());
    }
}

TEST_CASE("row basis") {
    fp::RowBasis rows(5, 3);
    CHECK(rows.insert({1, 2, 3}));
    CHECK_FALSE(rows.insert({2, 4, 1}));
    CHECK(rows.contains(fp::Vec{3, 1, 4}));
    CHECK(rows.insert({0, 0, 1}));
    CHECK(rows.rank() == 2);
    const auto ns = rows.null_space();
    REQUIRE(ns.size() == 1);
    CHECK((ns[0][0] + 2 * ns[0][1]) % 5 == 0);
    CHECK(ns[0][2] == 0);
}

TEST_CASE("kron shape and mixed product") {
    const auto a = Matrix::from_rows(3, {{1, 2}, {0, 1}});
    const auto b = Matrix::from_rows(3, {{2, 0}, {1, 1}});
    const auto k = a.kron(b);
    CHECK(k.rows() == 4);
    CHECK(k(1, 2) == (a(0, 1) * b(1, 0)) % 3);
    CHECK((a * a).kron(b * b) == a.kron(b) * a.kron(b));
}
