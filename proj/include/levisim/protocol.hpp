#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "levisim/config.hpp"
#include "levisim/derived.hpp"
#include "levisim/gaussian.hpp"
#include "levisim/rates.hpp"

namespace levisim {

// Raised when the pulse self-consistency conditions cannot be met.
class PlanningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepted band for tau * Gamma_bar around 1.
inline constexpr double kTauGammaLow = 1.0 / 3.0;
inline constexpr double kTauGammaHigh = 3.0;
// Upper limit on omega_t tau / 4 for dropping the kinetic term during the pulse.
inline constexpr double kKineticLimit = 0.05;

struct PulsePlan {
    double photons = 0.0;        // n_ph
    double t1 = 0.0;             // expansion time, s
    double tau = 0.0;            // pulse length 2 pi / kappa, s
    double sigma = 0.0;          // packet size at the pulse, m
    double chi = 0.0;            // measurement strength 2 sqrt(C_q)
    double phase = 0.0;          // g_q_enhanced sqrt(n_ph) tau, rad
    double gamma_bar = 0.0;      // Lambda_sc <x^2(t1)>, 1/s
    double t2 = 0.0;             // fall time m sigma^2 / (hbar chi), s
    double c_linear = 0.0;
    double c_quadratic = 0.0;
    double tau_gamma = 0.0;      // tau * Gamma_bar
    double kinetic = 0.0;        // omega_t tau / 4
    double phase_target = 0.0;   // <xp + px>(t1) / (4 hbar), rad
    double phase_residual = 0.0; // phase - phase_target
    GaussianState expanded;      // after t1 under standard decoherence
    GaussianState at_measurement;// after the pulse, photon scattering included
};

struct SlitGeometry {
    double separation = 0.0;     // d, m
    double packet_width = 0.0;   // sigma_2, m
    double outcome = 0.0;        // p_L
    double fringe_spacing = 0.0; // x_f, m
};

struct OutcomeMoments {
    double mean = 0.0;
    double variance = 0.0;
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct RegimeBounds {
    double d_min = 0.0;
    double d_max_a = 0.0;    // wavepacket size sigma
    double d_max_b = 0.0;    // coherence length at the pulse
    double d_max_c = 0.0;    // detector resolution
    double d_max_d = 0.0;    // blurring by standard decoherence
    double d_max_csl = 0.0;  // blurring by CSL alone; reported, not gating
    bool operational = false;  // the configured separation lies inside the window

    double upper() const;
    /// d_min < d < min(d_max_a..d).
    bool admits(double separation) const;
};

struct PlanOptions {
    bool enforce = true;  // throw PlanningError when a consistency band is violated
};

/// Fixes photon number, expansion time, pulse length and fall time from the
/// self-consistency conditions tau ~ 1/Gamma_bar ~ 2 pi/kappa.
PulsePlan plan_pulse(const ExperimentConfig& config, const DerivedQuantities& dq, PlanOptions options = {});

/// Free-expansion width of the trap ground state after t1, the sigma the
/// measurement is referred to: sigma^2 = x0^2 + hbar^2 t1^2 / (4 x0^2 m^2).
double expanded_width(const DerivedQuantities& dq, double t1);

SlitGeometry slit_from_outcome(double outcome, double chi, double sigma, double t2, double mass);
double outcome_for_separation(double separation, double chi, double sigma);

/// Mean and variance of the integrated phase quadrature p_L for a Gaussian
/// state measured with strength chi, positions scaled by sigma.
OutcomeMoments outcome_distribution(const GaussianState& state, double sigma, double chi);

/// Blurring width sigma_b = 2 hbar / m sqrt(t^3 Lambda / 3) of the free-fall
/// position distribution.
double blur_width(double mass, double t, double localization);

/// Largest slit separation whose fringes survive blurring at rate `localization`:
/// (pi/2) sqrt(3 / (t2 Lambda)); unbounded for Lambda = 0.
double blur_bound(double t2, double localization);

RegimeBounds regime_bounds(const ExperimentConfig& config, const DerivedQuantities& dq,
                           const PulsePlan& plan, const LocalizationRates& rates);

struct ProtocolAnalysis {
    DerivedQuantities derived;
    PulsePlan plan;
    LocalizationRates rates;  // photon scattering at plan.photons
    RegimeBounds bounds;
};

ProtocolAnalysis analyze(const ExperimentConfig& config, PlanOptions options = {});

struct ScanRow {
    double diameter = 0.0;
    double separation = 0.0;  // slit separation tested for this diameter
    std::optional<ProtocolAnalysis> analysis;  // empty when planning failed
    std::string error;
    bool operational() const { return analysis && analysis->bounds.operational; }
};

/// n log-spaced points in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// One row per diameter; rows are independent and computed with `jobs`
/// OpenMP threads, assembled in input order.
std::vector<ScanRow> scan_regime(const ExperimentConfig& config, std::span<const double> diameters, int jobs = 0);

/// Single-threaded reference for scan_regime.
std::vector<ScanRow> scan_regime_serial(const ExperimentConfig& config, std::span<const double> diameters);

}  // namespace levisim
