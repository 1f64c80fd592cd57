#ifndef FRACPOLE_TRIGPOLY_HPP
#define FRACPOLE_TRIGPOLY_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fracpole {

using cplx = std::complex<double>;

/// Default quadrature grid size (number of points on [-pi, pi)).
inline constexpr std::size_t default_grid = std::size_t{1} << 14;

/**
 * Hermitian trigonometric polynomial p(theta) = sum_{k=-m}^{m} c_k e^{j k theta}.
 *
 * Only c_0..c_m are stored; c_{-k} is conj(c_k) by construction, so the
 * Hermitian invariant cannot be broken after construction. c_0 is real.
 */
class TrigPoly {
 public:
  TrigPoly() : coeffs_{cplx{0.0}} {}

  /// Builds from c_0..c_m. Throws invalid_argument if c_0 has an imaginary
  /// part beyond rounding or any coefficient is non-finite.
  static TrigPoly from_nonnegative(std::vector<cplx> c);

  /// Builds from c_{-m}..c_m (odd length). The input must be Hermitian to
  /// within 1e-12 relative to the largest coefficient.
  static TrigPoly from_symmetric(std::span<const cplx> c);

  static TrigPoly constant(double c) { return from_nonnegative({cplx{c}}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  /// c_k for any k; zero when |k| > degree.
  cplx coeff(int k) const noexcept;

  /// c_0..c_m.
  std::span<const cplx> nonnegative() const noexcept { return coeffs_; }

  /// sum_k |c_k| over -m..m.
  double abs_sum() const noexcept;

 private:
  explicit TrigPoly(std::vector<cplx> c) : coeffs_(std::move(c)) {}
  std::vector<cplx> coeffs_;
};

enum class GridLayout {
  endpoint,  ///< theta_i = -pi + 2 pi i / N
  midpoint,  ///< theta_i = -pi + 2 pi (i + 1/2) / N
};

/// Grid-sampled nonnegative spectral density on a uniform grid of [-pi, pi).
class GridDensity {
 public:
  /// Throws invalid_argument unless n_grid >= 8 is a power of two and every
  /// value is finite and >= 0.
  GridDensity(std::vector<double> values,
              GridLayout layout = GridLayout::endpoint);

  std::size_t n_grid() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  GridLayout layout() const noexcept { return layout_; }
  double theta(std::size_t i) const noexcept {
    return grid_theta(i, values_.size(), layout_);
  }

  static double grid_theta(std::size_t i, std::size_t n,
                           GridLayout layout) noexcept;

 private:
  std::vector<double> values_;
  GridLayout layout_;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Real part of sum_k c_k e^{j k theta}.
double eval(const TrigPoly& p, double theta);

/// The raw complex sum; its imaginary part is pure rounding residue.
cplx eval_raw(const TrigPoly& p, double theta);

/// Exact pointwise sampling. Throws grid_too_small when n_grid <= 2 degree.
GridDensity sample_grid(const TrigPoly& p, std::size_t n_grid,
                        GridLayout layout = GridLayout::endpoint);

struct GridMin {
  double theta;
  double value;
  std::size_t index;
};

/// Smallest value on the grid; ties go to the smallest index.
GridMin min_on_grid(const GridDensity& g);

/// c_k = mean_i g_i e^{-j k theta_i}, k = 0..max_lag. Requires
/// max_lag < n_grid / 2.
TrigPoly fourier_coeffs(const GridDensity& g, int max_lag);

/**
 * Fourier coefficients of sqrt(p) computed on an n_grid point grid.
 *
 * Lags beyond the last one with |rho_k| >= 1e-13 |rho_0| are dropped, but
 * lags 0..min(degree, max_lag) are always kept. Throws not_positive when p is
 * not strictly positive on the grid.
 */
TrigPoly sqrt_coeffs(const TrigPoly& p, int max_lag,
                     std::size_t n_grid = default_grid);

/// p(e^{j theta}) = gain |1 + sum_k monic[k-1] e^{j k theta}|^2 with all
/// roots of the monic factor outside the closed unit disc.
struct SpectralFactor {
  std::vector<cplx> monic;  ///< p_1..p_m
  double gain = 0.0;
};

/**
 * Spectral factorization through the roots of z^m p(z). Supported up to
 * degree 32. Throws not_positive if p is not positive on the grid and
 * root_near_circle if a root lies within 1e-8 of the unit circle.
 */
SpectralFactor spectral_factorization(const TrigPoly& p,
                                      std::size_t n_grid = default_grid);

/// 1 + sum_k monic[k-1] z^k evaluated at z = e^{j theta}.
cplx eval_monic(std::span<const cplx> monic, double theta);

namespace detail {

// Fourier coefficients c_0..c_max_lag of grid values (no validation).
std::vector<cplx> grid_fourier(std::span<const double> values,
                               GridLayout layout, int max_lag);

// Grid values of p through one inverse FFT; agrees with eval() to rounding.
std::vector<double> fast_sample(const TrigPoly& p, std::size_t n_grid,
                                GridLayout layout = GridLayout::endpoint);

}  // namespace detail

}  // namespace fracpole

#endif  // FRACPOLE_TRIGPOLY_HPP
