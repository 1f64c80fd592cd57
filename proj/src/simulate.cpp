#include "fracpole/simulate.hpp"

#include <cmath>
#include <numbers>

#include "fracpole/detail/fft.hpp"
#include "fracpole/error.hpp"
#include "fracpole/random.hpp"

namespace fracpole {

Realization simulate_ar(const MeSpectrum& s, std::size_t length,
                        std::uint64_t seed) {
  if (length < 1) {
    throw Error(ErrorCode::invalid_argument, "simulate_ar: length must be >= 1");
  }
  std::vector<double> a(s.a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (s.a[k].imag() != 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "simulate_ar: coefficients must be real");
    }
    a[k] = s.a[k].real();
  }
  const std::size_t burn = 10 * a.size();
  const double gain = std::sqrt(s.k2);
  GaussianSource noise(seed);
  std::vector<double> u(burn + length, 0.0);
  for (std::size_t l = 0; l < u.size(); ++l) {
    double acc = gain * noise.next();
    for (std::size_t k = 1; k <= a.size() && k <= l; ++k) acc -= a[k - 1] * u[l - k];
    u[l] = acc;
  }
  Realization r;
  r.seed = seed;
  r.samples.assign(u.begin() + static_cast<std::ptrdiff_t>(burn), u.end());
  r.source = "ar:n=" + std::to_string(a.size());
  return r;
}

Realization simulate_spectral(const GridDensity& g, std::size_t length,
                              std::uint64_t seed) {
  const std::size_t n = g.n_grid();
  if (length < 1 || length > n) {
    throw Error(ErrorCode::invalid_argument,
                "simulate_spectral: need 1 <= length <= n_grid");
  }
  const bool midpoint = g.layout() == GridLayout::midpoint;
  const auto f = g.values();
  auto mirror = [&](std::size_t i) {
    return midpoint ? n - 1 - i : (n - i) % n;
  };
  auto symmetric = [&](std::size_t i) { return 0.5 * (f[i] + f[mirror(i)]); };

  GaussianSource noise(seed);
  std::vector<cplx> bins(n, cplx{0.0});
  const double dn = static_cast<double>(n);
  if (!midpoint) {
    bins[0] = std::sqrt(f[0] / dn) * noise.next();
    bins[n / 2] = std::sqrt(f[n / 2] / dn) * noise.next();
  }
  for (std::size_t i = midpoint ? n / 2 : n / 2 + 1; i < n; ++i) {
    const double amp = std::sqrt(2.0 * symmetric(i) / dn);
    const double xi = noise.next();
    const double eta = noise.next();
    bins[i] = amp * cplx(xi, -eta);
  }
  const auto y = detail::backward(bins);
  const double origin = g.theta(0);
  Realization r;
  r.seed = seed;
  r.samples.resize(length);
  for (std::size_t l = 0; l < length; ++l) {
    r.samples[l] = (std::polar(1.0, static_cast<double>(l) * origin) * y[l]).real();
  }
  r.source = "spectral:n_grid=" + std::to_string(n);
  return r;
}

Realization simulate_true_example(std::size_t length, std::uint64_t seed) {
  if (length < 1) {
    throw Error(ErrorCode::invalid_argument,
                "simulate_true_example: length must be >= 1");
  }
  GaussianSource noise(seed);
  const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * noise.engine().uniform();
  const double sd = std::sqrt(0.8);
  double prev = sd * noise.next();
  Realization r;
  r.seed = seed;
  r.samples.resize(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double w = sd * noise.next();
    r.samples[k] = w + 0.5 * prev + 2.0 * std::sin(0.5 * static_cast<double>(k) + phi);
    prev = w;
  }
  r.source = "ma1+sinusoid";
  return r;
}

}  // namespace fracpole
