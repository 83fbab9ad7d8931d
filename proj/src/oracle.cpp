#include "levisim/oracle.hpp"

#include <cmath>
#include <sstream>

#include "levisim/constants.hpp"
#include "levisim/fft.hpp"

namespace levisim {
namespace {

constexpr double kWrapThreshold = 1e-6;

double edge_magnitude(const DensityMatrix& d) {
    const std::size_t n = d.grid.n;
    const std::size_t band = std::max<std::size_t>(8, n / 64);
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool edge_row = i < band || i >= n - band;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::abs(d.at(i, j));
            peak = std::max(peak, v);
            if (edge_row || j < band || j >= n - band) edge = std::max(edge, v);
        }
    }
    return peak > 0 ? edge / peak : 0.0;
}

// Localization in the interaction picture, one line of constant r at a time.
void damp(DensityMatrix& d, double t, double localization) {
    const std::size_t n = d.grid.n;
    const double dx = d.grid.dx;
    const double hbar = kConstants.hbar;
    const double m = d.mass;
    const Fft fft(n);
    std::vector<std::complex<double>> line(n);

    for (std::size_t k = 0; k < n; ++k) {
        const double r = (k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n)) * dx;
        for (std::size_t i = 0; i < n; ++i) line[i] = d.at(i, (i + n - k) % n);
        fft.forward(line);
        for (std::size_t j = 0; j < n; ++j) {
            const double hk = hbar * fft_wavenumber(j, n, dx);
            const double exponent = t * r * r + t * t * hk * r / m + t * t * t * hk * hk / (3.0 * m * m);
            line[j] *= std::exp(-localization * exponent);
        }
        fft.inverse(line);
        for (std::size_t i = 0; i < n; ++i) d.at(i, (i + n - k) % n) = line[i];
    }
}

// rho -> U rho U^dagger with U = exp(-i p^2 t / (2 m hbar)).
void free_evolve(DensityMatrix& d, double t) {
    const std::size_t n = d.grid.n;
    const double dx = d.grid.dx;
    const Fft along_rows(n, n, n, 1);     // transforms over the first index
    const Fft along_columns(n, n, 1, n);  // transforms over the second index

    along_rows.forward(d.rho);
    along_columns.inverse(d.rho);
    const double coefficient = kConstants.hbar * t / (2.0 * d.mass);
    for (std::size_t i = 0; i < n; ++i) {
        const double ki = fft_wavenumber(i, n, dx);
        for (std::size_t j = 0; j < n; ++j) {
            const double kj = fft_wavenumber(j, n, dx);
            d.at(i, j) *= std::polar(1.0, -coefficient * (ki * ki - kj * kj));
        }
    }
    along_rows.inverse(d.rho);
    along_columns.forward(d.rho);
}

}  // namespace

double DensityMatrix::trace() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) acc += at(i, i).real();
    return acc * grid.dx;
}

DensityMatrix pure_density(const WaveState& s) {
    const std::size_t n = s.grid.n;
    if (n > kOracleMaxPoints) throw GridError("density-matrix oracle is limited to 1024 points");
    DensityMatrix d{s.grid, std::vector<std::complex<double>>(n * n), s.mass};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.at(i, j) = s.psi[i] * std::conj(s.psi[j]);
    return d;
}

PositionDistribution diagonal(const DensityMatrix& d) {
    PositionDistribution out{d.grid, std::vector<double>(d.grid.n)};
    for (std::size_t i = 0; i < d.grid.n; ++i) out.q[i] = d.at(i, i).real();
    return out;
}

DensityMatrix evolve_density(const DensityMatrix& rho, double t, double localization) {
    if (rho.grid.n > kOracleMaxPoints) throw GridError("density-matrix oracle is limited to 1024 points");
    if (!(t >= 0) || !(localization >= 0)) throw std::invalid_argument("t and localization must be >= 0");
    DensityMatrix out = rho;
    if (t == 0) return out;
    if (localization > 0) damp(out, t, localization);
    free_evolve(out, t);
    if (const double edge = edge_magnitude(out); edge > kWrapThreshold) {
        std::ostringstream msg;
        msg << "density matrix reaches the grid edge (relative magnitude " << edge << ")";
        throw GridError(msg.str());
    }
    return out;
}

}  // namespace levisim
