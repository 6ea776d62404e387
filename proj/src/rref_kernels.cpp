// Gauss-Jordan elimination over F_p.
//
// rref_serial is the reference kernel. rref_parallel splits the elimination
// of each pivot column across rows with OpenMP; every row update depends only
// on the pivot row and itself, so both kernels reach the same reduced form.

#include <utility>

#include "hasse/fp_matrix.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace hasse::fp {

namespace {

// Finds the next pivot in column c at or below row r, swaps it into row r and
// normalizes it to 1. Returns false if the column has no pivot.
bool place_pivot(Matrix& m, std::size_t r, std::size_t c) {
    const std::uint32_t p = m.modulus();
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) return false;
    if (piv != r) {
        auto a = m.row(piv);
        auto b = m.row(r);
        std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Elem inv = inv_mod(m(r, c), p);
    auto row = m.row(r);
    for (std::size_t j = c; j < m.cols(); ++j)
        row[j] = static_cast<Elem>(static_cast<std::uint64_t>(row[j]) * inv % p);
    return true;
}

inline void eliminate_row(Matrix& m, std::size_t target, std::size_t pivot_row, std::size_t c) {
    const std::uint32_t p = m.modulus();
    const Elem f = m(target, c);
    if (f == 0) return;
    auto t = m.row(target);
    auto s = m.row(pivot_row);
    const Elem neg = p - f;
    for (std::size_t j = c; j < m.cols(); ++j) t[j] = (t[j] + neg * s[j]) % p;
}

}  // namespace

std::vector<std::size_t> rref_serial(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        if (!place_pivot(m, r, c)) continue;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r) eliminate_row(m, i, r, c);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::size_t> rref_parallel(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const auto rows = static_cast<long long>(m.rows());
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        if (!place_pivot(m, r, c)) continue;
        const auto pr = static_cast<long long>(r);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < rows; ++i)
            if (i != pr) eliminate_row(m, static_cast<std::size_t>(i), r, c);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::size_t> rref(Matrix& m) {
    // Below this size the fork/join cost dominates.
    constexpr std::size_t kParallelThreshold = 1u << 16;
#if defined(_OPENMP)
    if (m.rows() * m.cols() >= kParallelThreshold && omp_get_max_threads() > 1)
        return rref_parallel(m);
#endif
    return rref_serial(m);
}

}  // namespace hasse::fp
