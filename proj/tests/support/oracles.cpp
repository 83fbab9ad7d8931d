#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levisim/constants.hpp"
#include "levisim/fft.hpp"

namespace levisim::testing {

ExperimentConfig reference_config() { return load_config_file(LEVISIM_REFERENCE_CONFIG); }

GaussianState integrate_moments(GaussianState s, double t, double localization, int steps) {
    const double m = s.mass;
    const double source = 2.0 * kConstants.hbar * kConstants.hbar * localization;
    struct D {
        double vx, cxp, vp;
    };
    const auto rhs = [&](const D& y) { return D{2.0 * y.cxp / m, y.vp / m, source}; };
    const double h = t / steps;
    D y{s.vx, s.cxp, s.vp};
    for (int i = 0; i < steps; ++i) {
        const D k1 = rhs(y);
        const D k2 = rhs({y.vx + 0.5 * h * k1.vx, y.cxp + 0.5 * h * k1.cxp, y.vp + 0.5 * h * k1.vp});
        const D k3 = rhs({y.vx + 0.5 * h * k2.vx, y.cxp + 0.5 * h * k2.cxp, y.vp + 0.5 * h * k2.vp});
        const D k4 = rhs({y.vx + h * k3.vx, y.cxp + h * k3.cxp, y.vp + h * k3.vp});
        y.vx += h / 6.0 * (k1.vx + 2 * k2.vx + 2 * k3.vx + k4.vx);
        y.cxp += h / 6.0 * (k1.cxp + 2 * k2.cxp + 2 * k3.cxp + k4.cxp);
        y.vp += h / 6.0 * (k1.vp + 2 * k2.vp + 2 * k3.vp + k4.vp);
    }
    s.vx = y.vx;
    s.cxp = y.cxp;
    s.vp = y.vp;
    return s;
}

DensityMatrix thermal_density(const Grid& grid, double mass, double omega, double occupation) {
    const std::size_t n = grid.n;
    const double x0 = std::sqrt(kConstants.hbar / (2.0 * mass * omega));
    DensityMatrix rho{grid, std::vector<std::complex<double>>(n * n), mass};

    std::vector<double> prev(n, 0.0), cur(n), next(n);
    const double norm0 = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * x0);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        cur[j] = norm0 * std::exp(-x * x / (4.0 * x0 * x0));
    }
    double weight = 1.0 / (occupation + 1.0);
    const double ratio = occupation / (occupation + 1.0);
    for (int level = 0; level < 400 && weight > 1e-18; ++level) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rho.at(i, j) += weight * cur[i] * cur[j];
        // phi_{k+1} = sqrt(2/(k+1)) s phi_k - sqrt(k/(k+1)) phi_{k-1}, s = x / (sqrt(2) x0)
        const double k = level;
        for (std::size_t j = 0; j < n; ++j) {
            const double s = grid.x(j) / (std::sqrt(2.0) * x0);
            next[j] = std::sqrt(2.0 / (k + 1.0)) * s * cur[j] - std::sqrt(k / (k + 1.0)) * prev[j];
        }
        std::swap(prev, cur);
        std::swap(cur, next);
        weight *= ratio;
        if (occupation == 0) break;
    }
    return rho;
}

namespace {

std::vector<std::complex<double>> master_rhs(const std::vector<std::complex<double>>& rho, const Grid& g,
                                             double mass, double localization) {
    const std::size_t n = g.n;
    const Fft first(n, n, n, 1);
    const Fft second(n, n, 1, n);
    auto spectral = rho;
    first.forward(spectral);
    second.forward(spectral);
    const std::complex<double> i_unit{0.0, 1.0};
    const double c = kConstants.hbar / (2.0 * mass);
    for (std::size_t a = 0; a < n; ++a) {
        const double ka = fft_wavenumber(a, n, g.dx);
        for (std::size_t b = 0; b < n; ++b) {
            const double kb = fft_wavenumber(b, n, g.dx);
            spectral[a * n + b] *= i_unit * c * (kb * kb - ka * ka);
        }
    }
    first.inverse(spectral);
    second.inverse(spectral);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double r = g.x(a) - g.x(b);
            spectral[a * n + b] -= localization * r * r * rho[a * n + b];
        }
    return spectral;
}

}  // namespace

DensityMatrix integrate_master_equation(const DensityMatrix& rho, double t, double localization, int steps) {
    if (rho.grid.n > 256) throw std::invalid_argument("direct integration is for small grids");
    DensityMatrix out = rho;
    const double h = t / steps;
    const std::size_t size = out.rho.size();
    std::vector<std::complex<double>> tmp(size);
    for (int s = 0; s < steps; ++s) {
        const auto& y = out.rho;
        const auto k1 = master_rhs(y, out.grid, out.mass, localization);
        for (std::size_t i = 0; i < size; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        const auto k2 = master_rhs(tmp, out.grid, out.mass, localization);
        for (std::size_t i = 0; i < size; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        const auto k3 = master_rhs(tmp, out.grid, out.mass, localization);
        for (std::size_t i = 0; i < size; ++i) tmp[i] = y[i] + h * k3[i];
        const auto k4 = master_rhs(tmp, out.grid, out.mass, localization);
        for (std::size_t i = 0; i < size; ++i) out.rho[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

double position_variance(const DensityMatrix& rho) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.grid.n; ++i) acc += rho.grid.x(i) * rho.grid.x(i) * rho.at(i, i).real();
    return acc * rho.grid.dx / rho.trace();
}

double parity_of(const DensityMatrix& rho) {
    const std::size_t n = rho.grid.n;
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) acc += rho.at(i, n - i).real();
    return acc * rho.grid.dx / rho.trace();
}

double fitted_coherence_length(const DensityMatrix& rho) {
    const std::size_t n = rho.grid.n;
    double peak = 0.0;
    for (std::size_t i = 1; i < n; ++i) peak = std::max(peak, std::abs(rho.at(i, n - i)));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double v = std::abs(rho.at(i, n - i));
        if (v < 1e-4 * peak) continue;
        const double r = 2.0 * rho.grid.x(i);
        const double u = r * r;
        const double y = std::log(v);
        sx += u;
        sy += y;
        sxx += u * u;
        sxy += u * y;
        ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return std::sqrt(-1.0 / slope);
}

PeakFit fit_peak(const PositionDistribution& dist, std::size_t index, double level) {
    const auto& q = dist.q;
    const double half = level * q[index];
    std::size_t lo = index, hi = index;
    while (lo > 0 && q[lo - 1] >= half && q[lo - 1] <= q[lo]) --lo;
    while (hi + 1 < q.size() && q[hi + 1] >= half && q[hi + 1] <= q[hi]) ++hi;
    if (hi - lo < 2) {
        lo = index - 1;
        hi = index + 1;
    }
    // Normal equations for log q = c0 + c1 y + c2 y^2, y in grid units.
    double s[5] = {0, 0, 0, 0, 0}, t[3] = {0, 0, 0};
    for (std::size_t j = lo; j <= hi; ++j) {
        const double y = static_cast<double>(j) - static_cast<double>(index);
        const double l = std::log(q[j]);
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            s[k] += p;
            if (k < 3) t[k] += p * l;
            p *= y;
        }
    }
    const double a[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
    const auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double d = det3(a);
    double coef[3];
    for (int c = 0; c < 3; ++c) {
        double m[3][3];
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) m[r][k] = k == c ? t[r] : a[r][k];
        coef[c] = det3(m) / d;
    }
    const double dx = dist.grid.dx;
    PeakFit fit;
    fit.width = std::sqrt(-1.0 / (2.0 * coef[2])) * dx;
    // Peak location from the three samples around the maximum.
    const double l0 = std::log(q[index - 1]), l1 = std::log(q[index]), l2 = std::log(q[index + 1]);
    fit.position = dist.grid.x(index) + dx * 0.5 * (l0 - l2) / (l0 - 2.0 * l1 + l2);
    return fit;
}

std::vector<std::size_t> local_maxima(std::span<const double> q, double floor) {
    const double top = *std::max_element(q.begin(), q.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < q.size(); ++i)
        if (q[i] > q[i - 1] && q[i] >= q[i + 1] && q[i] > floor * top) out.push_back(i);
    return out;
}

ExperimentConfig random_config(std::mt19937_64& rng) {
    const auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
    };
    const auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    ExperimentConfig c = reference_config();
    c.sphere.radius = log_uniform(8e-9, 60e-9);
    c.sphere.density = uniform(1800, 3000);
    c.sphere.eps_r = {uniform(1.8, 4.0), log_uniform(1e-11, 1e-8)};
    c.sphere.eps_bb = {uniform(1.8, 4.0), uniform(0.1, 1.5)};
    c.sphere.internal_temperature = uniform(4.5, 400);
    c.cavity.finesse = log_uniform(3e4, 1e6);
    c.cavity.length = log_uniform(1e-6, 1e-5);
    c.cavity.waist = log_uniform(0.8e-6, 3e-6);
    c.cavity.wavelength = uniform(0.8e-6, 1.6e-6);
    c.trap.frequency = 2.0 * kPi * log_uniform(2e4, 5e5);
    c.trap.occupation = uniform(0.0, 2.0);
    c.environment.pressure = log_uniform(1e-17, 1e-12) * units::torr;
    c.environment.temperature = uniform(1.0, 20.0);
    c.protocol.detector_resolution = log_uniform(1e-9, 5e-8);
    c.protocol.separation_over_diameter = uniform(0.3, 2.0);
    c.protocol.csl_factor = std::bernoulli_distribution(0.5)(rng) ? log_uniform(1.0, 1e8) : 0.0;
    return c;
}

double max_relative_deviation(std::span<const double> a, std::span<const double> b) {
    double scale = 0.0, worst = 0.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst / scale;
}

}  // namespace levisim::testing
