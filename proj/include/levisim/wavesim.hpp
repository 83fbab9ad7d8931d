#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "levisim/config.hpp"
#include "levisim/protocol.hpp"

namespace levisim {

class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MeasurementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 22;

// Uniform periodic grid x_j = (j - n/2) dx, j = 0..n-1, n a power of two.
// x_{n/2} = 0 and x_{n-j} = -x_j exactly.
struct Grid {
    std::size_t n = 0;
    double dx = 0.0;

    double x(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(n / 2)) * dx; }
    double span() const { return static_cast<double>(n) * dx; }
    bool operator==(const Grid&) const = default;
};

Grid make_grid(std::size_t n, double dx);

/// Grid resolving both the slits (8 points per sigma_2) and the final fringes
/// (8 points per x_f), wide enough for the pre-measurement packet and the
/// spread pattern after t2.
Grid plan_grid(double sigma, double separation, double packet_width, double t2, double mass);

struct WaveState {
    Grid grid;
    std::vector<std::complex<double>> psi;  // m^(-1/2)
    double mass = 0.0;

    double norm() const;
};

struct PositionDistribution {
    Grid grid;
    std::vector<double> q;  // 1/m

    double total() const;
    double mean() const;
    double variance() const;
};

struct FringeReport {
    double spacing = 0.0;      // m
    double visibility = 0.0;   // (max - min) / (max + min) over the central fringe
    double envelope_width = 0.0;  // standard deviation of the pattern, m
    double center = 0.0;       // position of the central maximum, m
    bool detected = false;
};

/// Normalized psi ~ exp(-x^2 / (4 sigma^2)). Throws GridError when the grid
/// spans less than 8 sigma.
WaveState gaussian_wavefunction(double sigma, const Grid& grid, double mass);

struct MeasurementResult {
    WaveState state;  // renormalized
    double weight = 0.0;   // integral of |M psi|^2
    double density = 0.0;  // probability density of the outcome, weight / sqrt(pi/2)
};

/// Applies M = exp(-i phase x~^2 - (outcome - chi x~^2)^2), x~ = x / sigma.
/// Throws MeasurementError when the unnormalized norm drops below 1e-12.
MeasurementResult apply_measurement(const WaveState& state, double outcome, double chi, double phase,
                                    double sigma);

/// Exact free evolution on the periodic grid: the momentum amplitudes pick up
/// exp(-i hbar k^2 t / 2m). Throws GridError when the result reaches the edges.
WaveState free_propagate(const WaveState& state, double t);

PositionDistribution position_distribution(const WaveState& state);

/// Convolution with exp(-y^2 / sigma_b^2) / (sigma_b sqrt(pi)), sampled and
/// normalized on the grid. sigma_b = 0 is the identity.
PositionDistribution blur(const PositionDistribution& dist, double sigma_b);

/// Gaussian detector response with standard deviation resolution / 2.
PositionDistribution detector_response(const PositionDistribution& dist, double resolution);

/// Fringe period from the dominant non-zero spatial frequency, refined by the
/// spacing of the maxima around the central fringe.
FringeReport extract_fringes(const PositionDistribution& dist);

struct SimulationOptions {
    bool force = false;  // run even when the slit separation is outside the operational window
};

struct SimulationResult {
    ProtocolAnalysis analysis;
    SlitGeometry slit;
    Grid grid;
    double measurement_density = 0.0;
    double blur_standard = 0.0;  // sigma_b from standard decoherence, m
    double blur_csl = 0.0;       // sigma_b from standard + CSL, m
    PositionDistribution ideal;     // Schroedinger evolution only
    PositionDistribution standard;  // standard decoherence and detector
    PositionDistribution csl;       // standard + CSL decoherence and detector
    FringeReport ideal_report;
    FringeReport standard_report;
    FringeReport csl_report;
};

/// Plan, measure at the outcome for the configured separation, fall for t2,
/// then blur for the three decoherence scenarios. The expansion chirp is taken
/// as compensated by the pulse phase, so the measured state is the real
/// Gaussian of width sigma; the residual is in analysis.plan.phase_residual.
SimulationResult simulate_protocol(const ExperimentConfig& config, SimulationOptions options = {});

}  // namespace levisim
