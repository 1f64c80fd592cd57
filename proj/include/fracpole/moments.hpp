#ifndef FRACPOLE_MOMENTS_HPP
#define FRACPOLE_MOMENTS_HPP

#include <span>
#include <vector>

#include "fracpole/trigpoly.hpp"

namespace fracpole {

/**
 * Autocorrelation samples R_0..R_n of a zero-mean stationary process,
 * R_k = E{u_l conj(u_{l-k})}, with R_{-k} = conj(R_k).
 *
 * Construction checks the structural invariants only (R_0 real and >= 0,
 * |R_k| <= R_0); positive definiteness is the job of is_posdef().
 */
class AutocovSeq {
 public:
  static AutocovSeq from(std::vector<cplx> r);
  static AutocovSeq from_real(std::span<const double> r);

  int n() const noexcept { return static_cast<int>(r_.size()) - 1; }
  std::span<const cplx> values() const noexcept { return r_; }

  /// R_k for |k| <= n.
  cplx at(int k) const noexcept;

  /// True when every R_k has zero imaginary part.
  bool is_real() const noexcept;

 private:
  explicit AutocovSeq(std::vector<cplx> r) : r_(std::move(r)) {}
  std::vector<cplx> r_;
};

/// Moments ordered (conj R_n, ..., conj R_1, R_0, R_1, ..., R_n).
class MomentVector {
 public:
  MomentVector() = default;
  explicit MomentVector(const AutocovSeq& a);

  /// Builds from R_0..R_n (R_0 forced real).
  static MomentVector from_nonnegative(std::span<const cplx> r);

  int n() const noexcept { return static_cast<int>(entries_.size()) / 2; }
  std::span<const cplx> entries() const noexcept { return entries_; }
  cplx at(int k) const noexcept { return entries_[n() + k]; }

  /// Largest entry magnitude.
  double inf_norm() const noexcept;

  AutocovSeq to_autocov() const;

 private:
  std::vector<cplx> entries_;
};

struct PosdefReport {
  bool posdef = false;
  /// Partial correlations gamma_1..gamma_k up to the last order reached.
  std::vector<cplx> reflection;
  /// Prediction-error variances sigma^2_0..sigma^2_k.
  std::vector<double> variances;
};

/// Positive definiteness of the Toeplitz matrix R_n via Levinson recursion:
/// true iff R_0 > 0 and every |gamma_k| < 1 - 1e-12.
PosdefReport is_posdef(const AutocovSeq& a);

struct LevinsonResult {
  /// a_1..a_n of the monic predictor polynomial 1 + sum a_k z^k.
  std::vector<cplx> a;
  /// sigma^2_n = det R_n / det R_{n-1}.
  double variance = 0.0;
  /// sigma^2_0..sigma^2_n.
  std::vector<double> variances;
  std::vector<cplx> reflection;
};

/// Throws not_posdef unless is_posdef(a).
LevinsonResult levinson(const AutocovSeq& a);

/// R_k = mean_i f(theta_i) e^{-j k theta_i} for |k| <= n; needs n < n_grid/2.
MomentVector moments_of_density(const GridDensity& g, int n);

/// Biased estimator (1/T) sum_l u_l conj(u_{l-k}); throws series_too_short
/// unless T > n.
AutocovSeq sample_autocov(std::span<const double> series, int n);
AutocovSeq sample_autocov(std::span<const cplx> series, int n);

/**
 * Adds a spectral line of the given mass at theta0 to a grid density. The
 * mass is split linearly between the two neighbouring grid points so that
 * its contribution to R_k is mass e^{-j k theta0} up to O(k^2 dtheta^2).
 */
GridDensity with_spectral_line(const GridDensity& g, double theta0,
                               double mass);

}  // namespace fracpole

#endif  // FRACPOLE_MOMENTS_HPP
