#include "levisim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "levisim/fft.hpp"

namespace levisim::kernels {
namespace {

inline cplx measurement_factor(double x, double outcome, double chi, double phase, double sigma) {
    const double u = (x / sigma) * (x / sigma);
    const double miss = outcome - chi * u;
    return std::polar(std::exp(-miss * miss), -phase * u);
}

inline double convolve_at(std::span<const double> in, std::span<const double> kernel, std::ptrdiff_t i) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    const auto h = static_cast<std::ptrdiff_t>(kernel.size() / 2);
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, h - i);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(kernel.size()), n - i + h);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j < hi; ++j) acc += kernel[j] * in[i + j - h];
    return acc;
}

void check_convolution(std::span<const double> in, std::span<const double> kernel, std::span<double> out) {
    if (kernel.size() % 2 == 0) throw std::invalid_argument("convolution kernel must have odd length");
    if (out.size() != in.size()) throw std::invalid_argument("convolution output size mismatch");
}

}  // namespace

namespace serial {

void apply_measurement(std::span<cplx> psi, GridView g, double outcome, double chi, double phase, double sigma) {
    for (std::size_t j = 0; j < psi.size(); ++j)
        psi[j] *= measurement_factor(g.x_first + static_cast<double>(j) * g.dx, outcome, chi, phase, sigma);
}

double norm_squared(std::span<const cplx> psi, double dx) {
    double acc = 0.0;
    for (const auto& z : psi) acc += std::norm(z);
    return acc * dx;
}

void scale(std::span<cplx> psi, double factor) {
    for (auto& z : psi) z *= factor;
}

void apply_quadratic_phase(std::span<cplx> spectrum, double dx, double coefficient) {
    const auto n = spectrum.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double k = fft_wavenumber(j, n, dx);
        spectrum[j] *= std::polar(1.0, -coefficient * k * k);
    }
}

void convolve(std::span<const double> in, std::span<const double> kernel, std::span<double> out) {
    check_convolution(in, kernel, out);
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = convolve_at(in, kernel, static_cast<std::ptrdiff_t>(i));
}

void abs_squared(std::span<const cplx> psi, std::span<double> out) {
    for (std::size_t j = 0; j < psi.size(); ++j) out[j] = std::norm(psi[j]);
}

}  // namespace serial

namespace parallel {

void apply_measurement(std::span<cplx> psi, GridView g, double outcome, double chi, double phase, double sigma) {
    const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        psi[j] *= measurement_factor(g.x_first + static_cast<double>(j) * g.dx, outcome, chi, phase, sigma);
}

double norm_squared(std::span<const cplx> psi, double dx) {
    const auto n = static_cast<std::ptrdiff_t>(psi.size());
    double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) acc += std::norm(psi[j]);
    return acc * dx;
}

void scale(std::span<cplx> psi, double factor) {
    const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) psi[j] *= factor;
}

void apply_quadratic_phase(std::span<cplx> spectrum, double dx, double coefficient) {
    const auto n = spectrum.size();
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const double k = fft_wavenumber(static_cast<std::size_t>(j), n, dx);
        spectrum[j] *= std::polar(1.0, -coefficient * k * k);
    }
}

void convolve(std::span<const double> in, std::span<const double> kernel, std::span<double> out) {
    check_convolution(in, kernel, out);
    const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = convolve_at(in, kernel, i);
}

void abs_squared(std::span<const cplx> psi, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = std::norm(psi[j]);
}

}  // namespace parallel

}  // namespace levisim::kernels
