#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace levisim {

// In-place complex FFTs backed by FFTW. Forward is unnormalized, inverse
// divides by the transform length. Plans are created under a global lock and
// are safe to execute concurrently on distinct buffers.
class Fft {
public:
    explicit Fft(std::size_t n);
    // `howmany` transforms of length n, element stride `stride`, consecutive
    // transforms `distance` apart.
    Fft(std::size_t n, std::size_t howmany, std::size_t stride, std::size_t distance);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::span<std::complex<double>> data) const;
    void inverse(std::span<std::complex<double>> data) const;

    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::size_t extent_;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

/// Angular wavenumber of FFT bin j on a grid of n points spaced dx.
inline double fft_wavenumber(std::size_t j, std::size_t n, double dx) {
    const double two_pi = 6.283185307179586476925286766559;
    const auto signed_j = j < (n + 1) / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    return two_pi * signed_j / (static_cast<double>(n) * dx);
}

}  // namespace levisim
