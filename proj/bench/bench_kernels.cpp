// Serial reference kernels against their OpenMP counterparts.
//   hasse_bench [repeats]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include <omp.h>

#include "hasse/cli.hpp"
#include "hasse/cohomology.hpp"
#include "hasse/cohomology_reference.hpp"

using namespace hasse;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial, double parallel) {
    std::cout << std::left << std::setw(34) << name << std::right << std::fixed << std::setprecision(4)
              << std::setw(12) << serial << std::setw(12) << parallel << std::setprecision(2)
              << std::setw(9) << serial / parallel << "x\n";
}

fp::Matrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    fp::Matrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<fp::Elem>(rng() % p);
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::cout << "threads: " << omp_get_max_threads() << ", best of " << repeats << "\n\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(12) << "serial s"
              << std::setw(12) << "omp s" << std::setw(10) << "speedup" << "\n";

    for (std::size_t n : {256u, 512u, 1024u}) {
        const auto m = random_matrix(5, n, n, n);
        const double s = best_of(repeats, [&] {
            auto a = m;
            fp::rref_serial(a);
        });
        const double p = best_of(repeats, [&] {
            auto a = m;
            fp::rref_parallel(a);
        });
        row("rref " + std::to_string(n) + "x" + std::to_string(n) + " over F5", s, p);
    }

    for (auto [g, name] : {std::pair{grp::special_linear(5), std::string("SL2(F5)")},
                           std::pair{grp::borel(5), std::string("B(F5)")}}) {
        const auto m = coh::build_module(coh::ModuleKind::TensorVV, g);
        const double s = best_of(repeats, [&] { coh::reference::h1_dim(*m, coh::reference::Kernel::Serial); });
        const double p = best_of(repeats, [&] { coh::reference::h1_dim(*m, coh::reference::Kernel::Parallel); });
        row("dense h1 " + name + " VxV", s, p);
    }

    const auto m = coh::build_module(coh::ModuleKind::TensorVV, grp::special_linear(5));
    const double dense = best_of(repeats, [&] { coh::reference::h1_dim(*m); });
    const double tree = best_of(repeats, [&] { coh::h1(m); });
    std::cout << "\nh1 SL2(F5) VxV: dense " << std::setprecision(4) << dense << " s, spanning tree "
              << tree << " s\n";

    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double scan1 = best_of(1, [] { cli::sha_scan({5, {"all"}, "families,random:50", cli::kDefaultSeed}); });
    omp_set_num_threads(threads);
    const double scanN = best_of(1, [] { cli::sha_scan({5, {"all"}, "families,random:50", cli::kDefaultSeed}); });
    row("sha-scan p=5 families,random:50", scan1, scanN);
    return 0;
}
