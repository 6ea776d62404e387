#pragma once

// Direct solvers that write down every cocycle condition (all pairs in degree
// 1, all triples in degree 2) as one dense system. Slow; kept as a reference
// for the spanning-tree solvers and as a benchmark workload.

#include "hasse/cohomology.hpp"

namespace hasse::coh::reference {

enum class Kernel { Serial, Parallel };

/// dim Z^1 from the |G|^2 d x |G| d system f(gh) - f(g) - g.f(h) = 0.
std::size_t z1_dim(const GModule& m, Kernel k = Kernel::Serial);
/// dim H^1 = dim Z^1 - (dim M - dim M^G).
std::size_t h1_dim(const GModule& m, Kernel k = Kernel::Serial);
/// dim H^2 over all (not necessarily normalized) cochains.
/// Intended for |G| <= 16 or so.
std::size_t h2_dim(const GModule& m, Kernel k = Kernel::Serial);

}  // namespace hasse::coh::reference
