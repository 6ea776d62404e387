#include "hasse/cohomology_reference.hpp"

namespace hasse::coh::reference {

namespace {

std::size_t rank_with(fp::Matrix& a, Kernel k) {
    return (k == Kernel::Serial ? fp::rref_serial(a) : fp::rref_parallel(a)).size();
}

void add_to(fp::Matrix& a, std::size_t row, std::size_t col, fp::Elem v) {
    const auto p = a.modulus();
    a(row, col) = (a(row, col) + v) % p;
}

}  // namespace

std::size_t z1_dim(const GModule& m, Kernel k) {
    const auto& g = *m.group();
    const std::size_t n = g.order();
    const std::size_t d = m.dim();
    const std::uint32_t p = m.p();
    fp::Matrix a(p, n * n * d, n * d);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto xy = static_cast<std::size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)));
            const auto& act = m.action(static_cast<int>(x));
            for (std::size_t i = 0; i < d; ++i) {
                const std::size_t row = (x * n + y) * d + i;
                add_to(a, row, xy * d + i, 1);
                add_to(a, row, x * d + i, p - 1);
                for (std::size_t j = 0; j < d; ++j)
                    if (act(i, j) != 0) add_to(a, row, y * d + j, p - act(i, j));
            }
        }
    return n * d - rank_with(a, k);
}

std::size_t h1_dim(const GModule& m, Kernel k) {
    const std::size_t z = z1_dim(m, k);
    const std::size_t b = m.dim() - h0(m).size();
    return z - b;
}

std::size_t h2_dim(const GModule& m, Kernel k) {
    const auto& g = *m.group();
    const std::size_t n = g.order();
    const std::size_t d = m.dim();
    const std::uint32_t p = m.p();
    auto cell = [&](std::size_t x, std::size_t y) { return (x * n + y) * d; };
    fp::Matrix a(p, n * n * n * d, n * n * d);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const auto xi = static_cast<int>(x), yi = static_cast<int>(y), zi = static_cast<int>(z);
                const auto xy = static_cast<std::size_t>(g.mul(xi, yi));
                const auto yz = static_cast<std::size_t>(g.mul(yi, zi));
                const auto& act = m.action(xi);
                for (std::size_t i = 0; i < d; ++i) {
                    const std::size_t row = ((x * n + y) * n + z) * d + i;
                    for (std::size_t j = 0; j < d; ++j)
                        if (act(i, j) != 0) add_to(a, row, cell(y, z) + j, act(i, j));
                    add_to(a, row, cell(xy, z) + i, p - 1);
                    add_to(a, row, cell(x, yz) + i, 1);
                    add_to(a, row, cell(x, y) + i, p - 1);
                }
            }
    const std::size_t z2 = n * n * d - rank_with(a, k);
    // B^2 is the image of C^1, whose kernel is Z^1.
    const std::size_t b2 = n * d - z1_dim(m, k);
    return z2 - b2;
}

}  // namespace hasse::coh::reference
