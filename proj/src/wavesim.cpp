#include "levisim/wavesim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "levisim/constants.hpp"
#include "levisim/fft.hpp"
#include "levisim/kernels.hpp"

namespace levisim {
namespace {

namespace par = kernels::parallel;

constexpr double kWrapThreshold = 1e-6;
constexpr double kTailSpreads = 16.0;
constexpr double kMinMeasurementNorm = 1e-12;
constexpr double kFringeNoiseFloor = 1e-6;

kernels::GridView view(const Grid& g) { return {g.x(0), g.dx}; }

// Largest |psi| in the outer bands relative to the overall maximum.
double edge_amplitude(const WaveState& s) {
    const std::size_t n = s.psi.size();
    const std::size_t band = std::max<std::size_t>(8, n / 64);
    double peak = 0.0;
    for (const auto& z : s.psi) peak = std::max(peak, std::abs(z));
    double edge = 0.0;
    for (std::size_t j = 0; j < band && j < n; ++j) {
        edge = std::max(edge, std::abs(s.psi[j]));
        edge = std::max(edge, std::abs(s.psi[n - 1 - j]));
    }
    return peak > 0 ? edge / peak : 0.0;
}

// Vertex offset in [-0.5, 0.5] of the parabola through three samples.
double parabolic_offset(double a, double b, double c) {
    const double denom = a - 2.0 * b + c;
    if (!(denom < 0)) return 0.0;
    return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

}  // namespace

Grid make_grid(std::size_t n, double dx) {
    if (n < 2 || !std::has_single_bit(n)) throw GridError("grid size must be a power of two >= 2");
    if (n > kMaxGridPoints) throw GridError("grid size exceeds the 2^22 cap");
    if (!(dx > 0)) throw GridError("grid spacing must be > 0");
    return {n, dx};
}

Grid plan_grid(double sigma, double separation, double packet_width, double t2, double mass) {
    const double hbar = kConstants.hbar;
    const double free_spread = hbar * t2 / (2.0 * mass * packet_width);
    const double spread = std::sqrt(packet_width * packet_width + free_spread * free_spread);
    const double fringe = 2.0 * kPi * hbar * t2 / (mass * separation);
    const double dx = std::min(packet_width, fringe) / 8.0;
    // Lobes close to d_min carry super-Gaussian momentum tails; at 8 spreads
    // they still wrap at the 1e-6 level.
    const double half = std::max(7.0 * sigma, 0.5 * separation + kTailSpreads * spread);
    const double points = std::ceil(2.0 * half / dx);
    if (!(points <= static_cast<double>(kMaxGridPoints))) {
        std::ostringstream msg;
        msg << "required grid of " << points << " points exceeds the 2^22 cap";
        throw GridError(msg.str());
    }
    return make_grid(std::bit_ceil(static_cast<std::size_t>(points)), dx);
}

double WaveState::norm() const { return par::norm_squared(psi, grid.dx); }

double PositionDistribution::total() const {
    double acc = 0.0;
    for (double v : q) acc += v;
    return acc * grid.dx;
}

double PositionDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) acc += grid.x(j) * q[j];
    return acc * grid.dx / total();
}

double PositionDistribution::variance() const {
    const double mu = mean();
    double acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double dev = grid.x(j) - mu;
        acc += dev * dev * q[j];
    }
    return acc * grid.dx / total();
}

WaveState gaussian_wavefunction(double sigma, const Grid& grid, double mass) {
    if (!(sigma > 0)) throw std::invalid_argument("sigma must be > 0");
    if (grid.span() < 8.0 * sigma) throw GridError("grid spans less than 8 sigma");
    WaveState s{grid, std::vector<std::complex<double>>(grid.n), mass};
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        s.psi[j] = std::exp(-x * x / (4.0 * sigma * sigma));
    }
    par::scale(s.psi, 1.0 / std::sqrt(s.norm()));
    return s;
}

MeasurementResult apply_measurement(const WaveState& state, double outcome, double chi, double phase, double sigma) {
    if (!(chi > 0)) throw std::invalid_argument("measurement strength must be > 0");
    MeasurementResult r{state, 0.0, 0.0};
    par::apply_measurement(r.state.psi, view(state.grid), outcome, chi, phase, sigma);
    r.weight = r.state.norm();
    if (!(r.weight >= kMinMeasurementNorm)) {
        std::ostringstream msg;
        msg << "outcome p_L = " << outcome << " has vanishing weight " << r.weight << " on this state";
        throw MeasurementError(msg.str());
    }
    r.density = r.weight / std::sqrt(0.5 * kPi);
    par::scale(r.state.psi, 1.0 / std::sqrt(r.weight));
    return r;
}

WaveState free_propagate(const WaveState& state, double t) {
    if (!(t >= 0)) throw std::invalid_argument("propagation time must be >= 0");
    if (t == 0) return state;
    WaveState out = state;
    const Fft fft(state.grid.n);
    fft.forward(out.psi);
    par::apply_quadratic_phase(out.psi, state.grid.dx, kConstants.hbar * t / (2.0 * state.mass));
    fft.inverse(out.psi);
    if (const double edge = edge_amplitude(out); edge > kWrapThreshold) {
        std::ostringstream msg;
        msg << "wavefunction reaches the grid edge after propagation (relative amplitude " << edge << ")";
        throw GridError(msg.str());
    }
    return out;
}

PositionDistribution position_distribution(const WaveState& state) {
    PositionDistribution d{state.grid, std::vector<double>(state.grid.n)};
    par::abs_squared(state.psi, d.q);
    return d;
}

PositionDistribution blur(const PositionDistribution& dist, double sigma_b) {
    if (!(sigma_b >= 0)) throw std::invalid_argument("blur width must be >= 0");
    if (sigma_b == 0) return dist;
    const double dx = dist.grid.dx;
    const auto half = static_cast<std::size_t>(std::ceil(8.0 * sigma_b / dx));
    if (half >= dist.grid.n / 2) throw GridError("blur kernel is wider than the grid");

    std::vector<double> kernel(2 * half + 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < kernel.size(); ++j) {
        const double y = (static_cast<double>(j) - static_cast<double>(half)) * dx;
        kernel[j] = std::exp(-y * y / (sigma_b * sigma_b));
        sum += kernel[j];
    }
    for (auto& w : kernel) w /= sum;

    PositionDistribution out{dist.grid, std::vector<double>(dist.q.size())};
    par::convolve(dist.q, kernel, out.q);
    return out;
}

PositionDistribution detector_response(const PositionDistribution& dist, double resolution) {
    // exp(-y^2/s^2) has standard deviation s / sqrt(2).
    return blur(dist, resolution / std::sqrt(2.0));
}

FringeReport extract_fringes(const PositionDistribution& dist) {
    const auto& q = dist.q;
    const std::size_t n = q.size();
    const Grid& g = dist.grid;

    FringeReport report;
    report.center = dist.mean();
    report.envelope_width = std::sqrt(dist.variance());

    std::vector<std::complex<double>> spectrum(q.begin(), q.end());
    Fft(n).forward(spectrum);
    const std::size_t nyquist = n / 2;
    std::vector<double> mag(nyquist + 1);
    for (std::size_t k = 0; k <= nyquist; ++k) mag[k] = std::abs(spectrum[k]);
    if (!(mag[0] > 0)) return report;

    // Walk down the envelope lobe around zero frequency, then take the strongest bin beyond it.
    std::size_t k = 1;
    while (k + 1 <= nyquist && mag[k + 1] < mag[k]) ++k;
    const auto peak = static_cast<std::size_t>(std::max_element(mag.begin() + k, mag.end()) - mag.begin());
    if (peak == 0 || mag[peak] < kFringeNoiseFloor * mag[0]) return report;

    double bin = static_cast<double>(peak);
    if (peak < nyquist && mag[peak - 1] > 0 && mag[peak + 1] > 0)
        bin += parabolic_offset(std::log(mag[peak - 1]), std::log(mag[peak]), std::log(mag[peak + 1]));
    const double coarse = g.span() / bin;

    double qmax = 0.0;
    for (double v : q) qmax = std::max(qmax, v);
    std::vector<double> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (q[i] > q[i - 1] && q[i] >= q[i + 1] && q[i] > 1e-3 * qmax)
            maxima.push_back(g.x(i) + g.dx * parabolic_offset(q[i - 1], q[i], q[i + 1]));
    }

    double spacing = coarse;
    double center = report.center;
    if (!maxima.empty()) {
        const auto central = std::min_element(maxima.begin(), maxima.end(), [&](double a, double b) {
            return std::abs(a - report.center) < std::abs(b - report.center);
        });
        center = *central;
        const auto plausible = [&](double gap) { return gap > 0.5 * coarse && gap < 1.5 * coarse; };
        const bool has_left = central != maxima.begin() && plausible(center - *(central - 1));
        const bool has_right = central + 1 != maxima.end() && plausible(*(central + 1) - center);
        if (has_left && has_right)
            spacing = 0.5 * (*(central + 1) - *(central - 1));
        else if (has_left)
            spacing = center - *(central - 1);
        else if (has_right)
            spacing = *(central + 1) - center;
    }

    double hi = 0.0;
    double lo = qmax;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(g.x(i) - center) <= spacing) {
            hi = std::max(hi, q[i]);
            lo = std::min(lo, q[i]);
        }
    }
    report.spacing = spacing;
    report.center = center;
    report.visibility = hi + lo > 0 ? std::clamp((hi - lo) / (hi + lo), 0.0, 1.0) : 0.0;
    report.detected = true;
    return report;
}

SimulationResult simulate_protocol(const ExperimentConfig& cfg, SimulationOptions options) {
    SimulationResult r;
    r.analysis = analyze(cfg, {.enforce = !options.force});
    const auto& plan = r.analysis.plan;
    const auto& bounds = r.analysis.bounds;
    const double m = r.analysis.derived.mass;
    const double d = target_separation(cfg);

    if (!options.force && !bounds.admits(d)) {
        std::ostringstream msg;
        msg << "slit separation " << d << " m is outside the operational window (" << bounds.d_min << ", "
            << bounds.upper() << ") m";
        throw PlanningError(msg.str());
    }

    const double outcome = outcome_for_separation(d, plan.chi, plan.sigma);
    r.slit = slit_from_outcome(outcome, plan.chi, plan.sigma, plan.t2, m);
    r.grid = plan_grid(plan.sigma, d, r.slit.packet_width, plan.t2, m);

    const auto initial = gaussian_wavefunction(plan.sigma, r.grid, m);
    const auto measured = apply_measurement(initial, outcome, plan.chi, 0.0, plan.sigma);
    r.measurement_density = measured.density;
    const auto fallen = free_propagate(measured.state, plan.t2);

    r.ideal = position_distribution(fallen);
    r.blur_standard = blur_width(m, plan.t2, r.analysis.rates.standard);
    r.blur_csl = blur_width(m, plan.t2, r.analysis.rates.standard + r.analysis.rates.csl);
    const double resolution = cfg.protocol.detector_resolution;
    r.standard = detector_response(blur(r.ideal, r.blur_standard), resolution);
    r.csl = detector_response(blur(r.ideal, r.blur_csl), resolution);

    r.ideal_report = extract_fringes(r.ideal);
    r.standard_report = extract_fringes(r.standard);
    r.csl_report = extract_fringes(r.csl);
    return r;
}

}  // namespace levisim
