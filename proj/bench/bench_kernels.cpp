// Serial reference vs OpenMP kernels, plus the diameter scan.
// Usage: levisim_bench [config.yaml] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "levisim/config.hpp"
#include "levisim/constants.hpp"
#include "levisim/kernels.hpp"
#include "levisim/protocol.hpp"

using namespace levisim;
using Clock = std::chrono::steady_clock;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %12.3f %12.3f %8.2fx\n", name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string config_path = argc > 1 ? argv[1] : "configs/reference.yaml";
    const int repeats = argc > 2 ? std::stoi(argv[2]) : 5;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

    const std::size_t n = std::size_t{1} << 20;
    std::vector<kernels::cplx> psi(n);
    std::vector<double> q(n), out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = (static_cast<double>(j) - n / 2.0) / n;
        psi[j] = std::polar(std::exp(-x * x * 20.0), 3.0 * x);
        q[j] = std::norm(psi[j]);
    }
    const kernels::GridView grid{-0.5, 1.0 / n};

    std::vector<double> kernel(401);
    for (std::size_t j = 0; j < kernel.size(); ++j) {
        const double y = (static_cast<double>(j) - 200.0) / 50.0;
        kernel[j] = std::exp(-y * y);
    }

    row("convolve (2^20, 401 taps)", best_of(repeats, [&] { kernels::serial::convolve(q, kernel, out); }),
        best_of(repeats, [&] { kernels::parallel::convolve(q, kernel, out); }));

    auto work = psi;
    row("apply_measurement (2^20)",
        best_of(repeats, [&] { work = psi; kernels::serial::apply_measurement(work, grid, 30.0, 40.0, 0.0, 0.2); }),
        best_of(repeats, [&] { work = psi; kernels::parallel::apply_measurement(work, grid, 30.0, 40.0, 0.0, 0.2); }));

    row("quadratic phase (2^20)",
        best_of(repeats, [&] { kernels::serial::apply_quadratic_phase(work, grid.dx, 1e-9); }),
        best_of(repeats, [&] { kernels::parallel::apply_quadratic_phase(work, grid.dx, 1e-9); }));

    row("norm_squared (2^20)", best_of(repeats, [&] { (void)kernels::serial::norm_squared(psi, grid.dx); }),
        best_of(repeats, [&] { (void)kernels::parallel::norm_squared(psi, grid.dx); }));

    try {
        const auto cfg = load_config_file(config_path);
        const auto diameters = log_spaced(10 * units::nm, 200 * units::nm, 30);
        row("scan (30 diameters)", best_of(repeats, [&] { (void)scan_regime_serial(cfg, diameters); }),
            best_of(repeats, [&] { (void)scan_regime(cfg, diameters); }));
    } catch (const std::exception& e) {
        std::printf("scan skipped: %s\n", e.what());
    }
    return 0;
}
