#pragma once

// Brute-force density-matrix evolution under
//   d rho/dt = (i / 2 m hbar) [rho, p^2] - Lambda [x, [x, rho]]
// on an N x N position grid. Used to validate the wavefunction + blurring path
// and the Gaussian moment formulas; intended for N <= 1024.
//
// Free evolution and localization are factorized exactly: in the interaction
// picture x_I(s) = x + p s / m, and the superoperators [x_I(s), [x_I(s), .]]
// commute for all s, so
//   rho(t) = U(t) exp(-Lambda int_0^t ad^2_{x_I(s)} ds) rho(0) U(t)^dagger.
// ad_x and ad_p act multiplicatively as r = x - x' and hbar K, K being
// conjugate to (x + x') / 2, which makes the damping a diagonal filter along
// each line of constant r.

#include <complex>
#include <cstddef>
#include <vector>

#include "levisim/wavesim.hpp"

namespace levisim {

inline constexpr std::size_t kOracleMaxPoints = 1024;

struct DensityMatrix {
    Grid grid;
    std::vector<std::complex<double>> rho;  // row-major, rho[i * n + j] = <x_i|rho|x_j> (1/m)
    double mass = 0.0;

    std::complex<double>& at(std::size_t i, std::size_t j) { return rho[i * grid.n + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return rho[i * grid.n + j]; }
    double trace() const;
};

DensityMatrix pure_density(const WaveState& state);

PositionDistribution diagonal(const DensityMatrix& rho);

/// Exact evolution for time t at localization rate `localization`.
/// Throws GridError for n > 1024 or when the result reaches the grid edges.
DensityMatrix evolve_density(const DensityMatrix& rho, double t, double localization);

}  // namespace levisim
