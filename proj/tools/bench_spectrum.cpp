// Compares the serial and parallel spectrum evaluators on a representative
// mid-burst state and reports the speedup.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coopdecay/analysis.hpp"

using namespace coopdecay;

int main() {
    SystemParams p;
    p.C = 25.0;
    p.rho_size = 40.0;
    AtomicState st;
    st.a = 0.8;
    st.n = 0.5;
    st.x = 0.02;

    const GammaSolveReport rep = solve_gamma(st, p);
    RateSet rates;
    rates.Gamma = rep.Gamma;

    const auto grid = make_omega_grid(20.0 * rates.Gamma_f(p), 1 << 21);
    using clk = std::chrono::steady_clock;

    // warm up the thread pool so startup cost stays out of the timings
    instantaneous_spectrum(st, rates, p, make_omega_grid(1.0, 1 << 12), false);

    const auto t0 = clk::now();
    const Spectrum s_serial = instantaneous_spectrum(st, rates, p, grid, /*serial=*/true);
    const auto t1 = clk::now();
    const Spectrum s_par = instantaneous_spectrum(st, rates, p, grid, /*serial=*/false);
    const auto t2 = clk::now();

    double maxdiff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        maxdiff = std::max(maxdiff, std::abs(s_serial.values[i] - s_par.values[i]));

    const double ts = std::chrono::duration<double>(t1 - t0).count();
    const double tp = std::chrono::duration<double>(t2 - t1).count();
#ifdef _OPENMP
    std::printf("threads:  %d\n", omp_get_max_threads());
#else
    std::printf("threads:  1 (OpenMP unavailable)\n");
#endif
    std::printf("points:   %zu\n", grid.size());
    std::printf("serial:   %.3f s\n", ts);
    std::printf("parallel: %.3f s\n", tp);
    std::printf("speedup:  %.2fx\n", ts / tp);
    std::printf("max |serial - parallel|: %g\n", maxdiff);
    return maxdiff == 0.0 ? 0 : 1;
}
