// fft.hpp
// Complex 1D transforms on uniform periodic grids (FFTW backend, cached plans).
//
// Conventions: forward() returns coefficients c[k], k = 0..N-1 in standard FFT
// order (mode n for k < N/2, mode k-N for k >= N/2), normalized by 1/N so that
//   f(alpha_j) = sum_k c[k] exp(i n_k alpha_j),  alpha_j = 2*pi*j/N.
#pragma once

#include <complex>
#include <vector>

namespace gravsurf {

using Complex = std::complex<double>;

std::vector<Complex> fft_forward(const std::vector<Complex>& samples);
std::vector<Complex> fft_inverse(const std::vector<Complex>& coeffs);

// Signed mode number for FFT bin k on an N-point grid (k = N/2 maps to -N/2).
inline int fft_mode(std::size_t k, std::size_t n) {
    return (k < n / 2) ? static_cast<int>(k)
                       : static_cast<int>(k) - static_cast<int>(n);
}

} // namespace gravsurf
