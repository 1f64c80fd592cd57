#ifndef FRACPOLE_SIMULATE_HPP
#define FRACPOLE_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fracpole/me.hpp"

namespace fracpole {

/// A real-valued sample path. Same seed and parameters give the same samples.
struct Realization {
  std::uint64_t seed = 0;
  std::vector<double> samples;
  std::string source;  ///< generator tag and parameters
};

/**
 * Autoregressive recursion u_l = -sum_k a_k u_{l-k} + sqrt(k2) w_l driven by
 * unit Gaussian noise, started from zeros with 10 n burn-in samples dropped.
 * The coefficients must be real (invalid_argument otherwise).
 */
Realization simulate_ar(const MeSpectrum& s, std::size_t length,
                        std::uint64_t seed);

/**
 * Real process from the discretized spectral representation:
 *
 *     u_l = sum_{0 < theta_i < pi} sqrt(2 f_i / N) (xi_i cos l theta_i
 *                                                  + eta_i sin l theta_i)
 *
 * plus cosine-only terms sqrt(f_i / N) xi_i for bins at theta = 0 and -pi,
 * where f_i is the density symmetrized about 0. Gaussians are drawn by
 * ascending grid index, xi before eta. The expected autocorrelation equals
 * the grid-quadrature moments of the symmetrized density. Requires
 * length <= n_grid; n_grid >= 4 length keeps the frequency resolution fine.
 */
Realization simulate_spectral(const GridDensity& g, std::size_t length,
                              std::uint64_t seed);

/**
 * Moving average plus random-phase sinusoid,
 *
 *     u_k = w_k + w_{k-1} / 2 + 2 sin(k / 2 + phi),
 *
 * with w Gaussian of variance 0.8 (so the MA part has unit variance) and phi
 * uniform on [-pi, pi) drawn first from the seeded stream.
 */
Realization simulate_true_example(std::size_t length, std::uint64_t seed);

}  // namespace fracpole

#endif  // FRACPOLE_SIMULATE_HPP
