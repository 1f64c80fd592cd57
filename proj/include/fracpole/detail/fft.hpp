#ifndef FRACPOLE_DETAIL_FFT_HPP
#define FRACPOLE_DETAIL_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace fracpole::detail {

// X_k = sum_i x_i exp(-2 pi j k i / N), k = 0..N/2.
std::vector<std::complex<double>> forward_real(std::span<const double> x);

// y_l = sum_i x_i exp(+2 pi j l i / N), l = 0..N-1 (unnormalized).
std::vector<std::complex<double>> backward(
    std::span<const std::complex<double>> x);

}  // namespace fracpole::detail

#endif  // FRACPOLE_DETAIL_FFT_HPP
