#include "levisim/fft.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace levisim {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(std::size_t n) : Fft(n, 1, 1, n) {}

Fft::Fft(std::size_t n, std::size_t howmany, std::size_t stride, std::size_t distance)
    : n_(n), extent_((n - 1) * stride + (howmany - 1) * distance + 1) {
    if (n == 0 || howmany == 0) throw std::invalid_argument("empty FFT");
    std::vector<std::complex<double>> scratch(extent_);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    auto* buf = as_fftw(scratch.data());
    forward_plan_ = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), buf, nullptr, static_cast<int>(stride),
                                       static_cast<int>(distance), buf, nullptr, static_cast<int>(stride),
                                       static_cast<int>(distance), FFTW_FORWARD, flags);
    inverse_plan_ = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), buf, nullptr, static_cast<int>(stride),
                                       static_cast<int>(distance), buf, nullptr, static_cast<int>(stride),
                                       static_cast<int>(distance), FFTW_BACKWARD, flags);
    if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("FFTW planning failed");
}

Fft::~Fft() {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft::forward(std::span<std::complex<double>> data) const {
    if (data.size() < extent_) throw std::invalid_argument("FFT buffer too small");
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data.data()), as_fftw(data.data()));
}

void Fft::inverse(std::span<std::complex<double>> data) const {
    if (data.size() < extent_) throw std::invalid_argument("FFT buffer too small");
    fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data.data()), as_fftw(data.data()));
    const double scale = 1.0 / static_cast<double>(n_);
    // Batched layouts are expected to tile [0, extent) without gaps.
    for (auto& z : data.first(extent_)) z *= scale;
}

}  // namespace levisim
