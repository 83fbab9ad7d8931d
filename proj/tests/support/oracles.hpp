#pragma once

// Independent reference computations used only by the tests.

#include <cstddef>
#include <random>
#include <span>

#include "levisim/config.hpp"
#include "levisim/gaussian.hpp"
#include "levisim/oracle.hpp"
#include "levisim/wavesim.hpp"

namespace levisim::testing {

/// The bundled acceptance fixture.
ExperimentConfig reference_config();

/// RK4 integration of d<x^2>/dt = 2 C/m, dC/dt = <p^2>/m, d<p^2>/dt = 2 hbar^2 Lambda.
GaussianState integrate_moments(GaussianState s, double t, double localization, int steps);

/// Thermal state of a harmonic trap summed over Hermite functions.
DensityMatrix thermal_density(const Grid& grid, double mass, double omega, double occupation);

/// RK4 on the master equation with spectral derivatives; small grids only.
DensityMatrix integrate_master_equation(const DensityMatrix& rho, double t, double localization, int steps);

/// Second moment of the diagonal.
double position_variance(const DensityMatrix& rho);

/// Mean parity: integral of rho(x, -x).
double parity_of(const DensityMatrix& rho);

/// Fit of |rho(x/2, -x/2)| to exp(-x^2 / xi^2).
double fitted_coherence_length(const DensityMatrix& rho);

struct PeakFit {
    double position = 0.0;
    double width = 0.0;  // standard deviation of the fitted Gaussian
};

/// Least-squares parabola through log q over the contiguous points around
/// `index` with q >= `level` times the local maximum.
PeakFit fit_peak(const PositionDistribution& dist, std::size_t index, double level = 0.5);

/// Indices of local maxima above `floor` times the global maximum.
std::vector<std::size_t> local_maxima(std::span<const double> q, double floor);

/// Randomized variation of the fixture across a wide parameter range.
ExperimentConfig random_config(std::mt19937_64& rng);

/// Largest |a_i - b_i| relative to max |b|.
double max_relative_deviation(std::span<const double> a, std::span<const double> b);

}  // namespace levisim::testing
