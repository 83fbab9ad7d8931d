#pragma once

// Data-parallel inner loops of the wavepacket simulation. Every kernel has a
// straightforward serial reference and an OpenMP version with the same
// signature. Elementwise kernels and the convolution give bit-identical
// results in both versions; reductions agree to rounding.

#include <complex>
#include <span>

namespace levisim::kernels {

using cplx = std::complex<double>;

// Positions are x_j = x_first + j dx.
struct GridView {
    double x_first;
    double dx;
};

namespace serial {

/// psi_j *= exp(-i phase u - (outcome - chi u)^2), u = (x_j / sigma)^2.
void apply_measurement(std::span<cplx> psi, GridView grid, double outcome, double chi, double phase,
                       double sigma);
/// sum |psi_j|^2 dx
double norm_squared(std::span<const cplx> psi, double dx);
void scale(std::span<cplx> psi, double factor);
/// spectrum_j *= exp(-i coefficient k_j^2) with k_j the FFT-ordered wavenumbers.
void apply_quadratic_phase(std::span<cplx> spectrum, double dx, double coefficient);
/// out_i = sum_j kernel_j in_{i + j - h}, h = kernel.size() / 2, zero outside.
void convolve(std::span<const double> in, std::span<const double> kernel, std::span<double> out);
void abs_squared(std::span<const cplx> psi, std::span<double> out);

}  // namespace serial

namespace parallel {

void apply_measurement(std::span<cplx> psi, GridView grid, double outcome, double chi, double phase,
                       double sigma);
double norm_squared(std::span<const cplx> psi, double dx);
void scale(std::span<cplx> psi, double factor);
void apply_quadratic_phase(std::span<cplx> spectrum, double dx, double coefficient);
void convolve(std::span<const double> in, std::span<const double> kernel, std::span<double> out);
void abs_squared(std::span<const cplx> psi, std::span<double> out);

}  // namespace parallel

}  // namespace levisim::kernels
