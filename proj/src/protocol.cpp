#include "levisim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <omp.h>

#include "levisim/constants.hpp"

namespace levisim {

double RegimeBounds::upper() const { return std::min({d_max_a, d_max_b, d_max_c, d_max_d}); }

bool RegimeBounds::admits(double separation) const {
    return d_min < separation && separation < upper();
}

double expanded_width(const DerivedQuantities& dq, double t1) {
    const double x0 = dq.zero_point;
    const double spread = kConstants.hbar * t1 / (2.0 * x0 * dq.mass);
    return std::sqrt(x0 * x0 + spread * spread);
}

PulsePlan plan_pulse(const ExperimentConfig& cfg, const DerivedQuantities& dq, PlanOptions options) {
    const double hbar = kConstants.hbar;
    const double x0 = dq.zero_point;
    const double kc = dq.wavenumber;
    const double thermal = 2.0 * cfg.trap.occupation + 1.0;

    // C_l and Lambda_sc / n_ph do not depend on the photon number.
    const double c_linear = coupling_rates(dq, 1.0, x0).c_linear;
    const double scattering_per_photon = photon_scattering_rate(dq, 1.0).localization;

    PulsePlan plan;
    plan.c_linear = c_linear;
    plan.photons = thermal / (32.0 * kPi * c_linear * (kc * x0) * (kc * x0));
    plan.t1 = std::sqrt(16.0 * dq.kappa * c_linear * kc * kc /
                        (dq.trap_frequency * dq.trap_frequency * thermal * thermal * scattering_per_photon));
    plan.tau = 2.0 * kPi / dq.kappa;
    plan.sigma = expanded_width(dq, plan.t1);

    const auto rates = localization_rates(cfg, dq, plan.photons);
    plan.expanded = evolve(initial_state(dq, cfg.trap.occupation), plan.t1, rates.standard);
    plan.at_measurement = evolve(plan.expanded, plan.tau, rates.standard + rates.photon_scattering);

    const auto coupling = coupling_rates(dq, plan.photons, plan.sigma);
    plan.c_quadratic = coupling.c_quadratic;
    plan.chi = 2.0 * std::sqrt(coupling.c_quadratic);
    plan.gamma_bar = rates.photon_scattering * plan.expanded.vx;
    plan.tau_gamma = plan.tau * plan.gamma_bar;
    plan.phase = coupling.g_q_enhanced * std::sqrt(plan.photons) * plan.tau;
    plan.phase_target = 2.0 * plan.expanded.cxp / (4.0 * hbar);
    plan.phase_residual = plan.phase - plan.phase_target;
    plan.t2 = dq.mass * plan.sigma * plan.sigma / (hbar * plan.chi);
    plan.kinetic = dq.trap_frequency * plan.tau / 4.0;

    if (options.enforce) {
        if (!(plan.tau_gamma >= kTauGammaLow && plan.tau_gamma <= kTauGammaHigh)) {
            std::ostringstream msg;
            msg << "tau * Gamma_bar = " << plan.tau_gamma << " outside [" << kTauGammaLow << ", "
                << kTauGammaHigh << "]";
            throw PlanningError(msg.str());
        }
        if (!(plan.kinetic < kKineticLimit)) {
            std::ostringstream msg;
            msg << "omega_t tau / 4 = " << plan.kinetic << " is not small (limit " << kKineticLimit << ")";
            throw PlanningError(msg.str());
        }
    }
    return plan;
}

SlitGeometry slit_from_outcome(double outcome, double chi, double sigma, double t2, double mass) {
    if (!(outcome > 0)) throw std::domain_error("outcome p_L must be > 0 for a double slit");
    if (!(chi > 0)) throw std::domain_error("measurement strength must be > 0");
    SlitGeometry s;
    s.outcome = outcome;
    s.separation = 2.0 * sigma * std::sqrt(outcome / chi);
    s.packet_width = sigma * sigma / (2.0 * s.separation * chi);
    s.fringe_spacing = 2.0 * kPi * kConstants.hbar * t2 / (mass * s.separation);
    return s;
}

double outcome_for_separation(double separation, double chi, double sigma) {
    const double half = separation / (2.0 * sigma);
    return chi * half * half;
}

OutcomeMoments outcome_distribution(const GaussianState& state, double sigma, double chi) {
    // x~ = x / sigma is Gaussian, so <x~^4> = 3 <x~^2>^2.
    const double second = state.vx / (sigma * sigma);
    return {chi * second, 0.5 + chi * chi * 2.0 * second * second};
}

double blur_width(double mass, double t, double localization) {
    return 2.0 * kConstants.hbar / mass * std::sqrt(t * t * t * localization / 3.0);
}

double blur_bound(double t2, double localization) {
    if (localization <= 0) return kUnbounded;
    return 0.5 * kPi * std::sqrt(3.0 / (t2 * localization));
}

RegimeBounds regime_bounds(const ExperimentConfig& cfg, const DerivedQuantities& dq, const PulsePlan& plan,
                           const LocalizationRates& rates) {
    RegimeBounds b;
    b.d_min = plan.sigma * std::sqrt(2.0 / plan.chi);
    b.d_max_a = plan.sigma;
    b.d_max_b = coherence_length(plan.at_measurement);
    b.d_max_c = 2.0 * kPi * kConstants.hbar * plan.t2 / (dq.mass * cfg.protocol.detector_resolution);
    b.d_max_d = blur_bound(plan.t2, rates.standard);
    b.d_max_csl = blur_bound(plan.t2, rates.csl);
    b.operational = b.admits(target_separation(cfg));
    return b;
}

ProtocolAnalysis analyze(const ExperimentConfig& cfg, PlanOptions options) {
    ProtocolAnalysis a;
    a.derived = derive(cfg);
    a.plan = plan_pulse(cfg, a.derived, options);
    a.rates = localization_rates(cfg, a.derived, a.plan.photons);
    a.bounds = regime_bounds(cfg, a.derived, a.plan, a.rates);
    return a;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

namespace {

ScanRow scan_row(const ExperimentConfig& base, double diameter) {
    ScanRow row;
    row.diameter = diameter;
    try {
        auto cfg = base;
        cfg.sphere.radius = 0.5 * diameter;
        row.separation = target_separation(cfg);
        row.analysis = analyze(cfg);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<ScanRow> scan_regime(const ExperimentConfig& cfg, std::span<const double> diameters, int jobs) {
    std::vector<ScanRow> rows(diameters.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(diameters.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = scan_row(cfg, diameters[i]);
    return rows;
}

std::vector<ScanRow> scan_regime_serial(const ExperimentConfig& cfg, std::span<const double> diameters) {
    std::vector<ScanRow> rows;
    rows.reserve(diameters.size());
    for (double d : diameters) rows.push_back(scan_row(cfg, d));
    return rows;
}

}  // namespace levisim
