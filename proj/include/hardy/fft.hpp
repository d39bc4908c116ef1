#pragma once
// Unnormalized FFT on power-of-two lengths, backed by FFTW.

#include <complex>
#include <span>

namespace hardy::fft {

// x_k <- sum_j x_j exp(-2 pi i j k / n)
void forward(std::span<std::complex<double>> data);
// x_k <- sum_j x_j exp(+2 pi i j k / n)
void inverse(std::span<std::complex<double>> data);

}  // namespace hardy::fft
