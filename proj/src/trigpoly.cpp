#include "fracpole/trigpoly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracpole/detail/fft.hpp"
#include "fracpole/error.hpp"

namespace fracpole {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_factor_degree = 32;

bool all_finite(std::span<const cplx> c) {
  return std::all_of(c.begin(), c.end(), [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

// (-1)^k e^{j k s 2pi/N}: maps FFT bins onto the [-pi, pi) grid (sampling
// direction; analysis uses the conjugate).
cplx grid_phase(int k, std::size_t n, GridLayout layout) {
  const double shift = layout == GridLayout::midpoint ? 0.5 : 0.0;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  if (shift == 0.0) return {sign, 0.0};
  return sign * std::polar(1.0, k * shift * 2.0 * pi / static_cast<double>(n));
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

cplx horner(std::span<const cplx> ascending, cplx z) {
  cplx acc{0.0};
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

cplx horner_derivative(std::span<const cplx> ascending, cplx z) {
  cplx acc{0.0};
  for (std::size_t i = ascending.size() - 1; i >= 1; --i) {
    acc = acc * z + static_cast<double>(i) * ascending[i];
  }
  return acc;
}

}  // namespace

TrigPoly TrigPoly::from_nonnegative(std::vector<cplx> c) {
  if (c.empty()) c.push_back(0.0);
  if (!all_finite(c)) {
    throw Error(ErrorCode::invalid_argument, "trigpoly: non-finite coefficient");
  }
  double scale = 0.0;
  for (cplx v : c) scale = std::max(scale, std::abs(v));
  if (std::abs(c[0].imag()) > 1e-12 * std::max(scale, 1e-300)) {
    throw Error(ErrorCode::invalid_argument,
                "trigpoly: constant coefficient must be real");
  }
  c[0] = c[0].real();
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::from_symmetric(std::span<const cplx> c) {
  if (c.size() % 2 == 0) {
    throw Error(ErrorCode::invalid_argument,
                "trigpoly: symmetric coefficient list must have odd length");
  }
  const std::size_t m = c.size() / 2;
  double scale = 0.0;
  for (cplx v : c) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 1; k <= m; ++k) {
    if (std::abs(c[m - k] - std::conj(c[m + k])) > 1e-12 * scale) {
      throw Error(ErrorCode::invalid_argument,
                  "trigpoly: coefficients are not Hermitian");
    }
  }
  return from_nonnegative(std::vector<cplx>(c.begin() + m, c.end()));
}

cplx TrigPoly::coeff(int k) const noexcept {
  const int a = std::abs(k);
  if (a > degree()) return 0.0;
  return k >= 0 ? coeffs_[a] : std::conj(coeffs_[a]);
}

double TrigPoly::abs_sum() const noexcept {
  double s = std::abs(coeffs_[0]);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) s += 2.0 * std::abs(coeffs_[k]);
  return s;
}

bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

GridDensity::GridDensity(std::vector<double> values, GridLayout layout)
    : values_(std::move(values)), layout_(layout) {
  if (values_.size() < 8 || !is_power_of_two(values_.size())) {
    throw Error(ErrorCode::invalid_argument,
                "grid: n_grid must be a power of two >= 8, got " +
                    std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "grid: density values must be finite and nonnegative");
    }
  }
}

double GridDensity::grid_theta(std::size_t i, std::size_t n,
                               GridLayout layout) noexcept {
  const double shift = layout == GridLayout::midpoint ? 0.5 : 0.0;
  return -pi + 2.0 * pi * (static_cast<double>(i) + shift) /
                   static_cast<double>(n);
}

cplx eval_raw(const TrigPoly& p, double theta) {
  const int m = p.degree();
  cplx acc{0.0};
  for (int k = -m; k <= m; ++k) {
    acc += p.coeff(k) * std::polar(1.0, k * theta);
  }
  return acc;
}

double eval(const TrigPoly& p, double theta) { return eval_raw(p, theta).real(); }

GridDensity sample_grid(const TrigPoly& p, std::size_t n_grid,
                        GridLayout layout) {
  if (n_grid <= 2 * static_cast<std::size_t>(p.degree())) {
    throw Error(ErrorCode::grid_too_small,
                "sample_grid: n_grid must exceed twice the degree");
  }
  std::vector<double> values(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    values[i] = eval(p, GridDensity::grid_theta(i, n_grid, layout));
  }
  return GridDensity(std::move(values), layout);
}

GridMin min_on_grid(const GridDensity& g) {
  const auto v = g.values();
  const auto it = std::min_element(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(it - v.begin());
  return {g.theta(idx), *it, idx};
}

namespace detail {

std::vector<cplx> grid_fourier(std::span<const double> values,
                               GridLayout layout, int max_lag) {
  const std::size_t n = values.size();
  const auto spectrum = forward_real(values);
  std::vector<cplx> c(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    c[k] = std::conj(grid_phase(k, n, layout)) * spectrum[k] / static_cast<double>(n);
  }
  return c;
}

std::vector<double> fast_sample(const TrigPoly& p, std::size_t n_grid,
                                GridLayout layout) {
  std::vector<cplx> bins(n_grid, cplx{0.0});
  const int m = p.degree();
  for (int k = -m; k <= m; ++k) {
    const std::size_t slot = k >= 0 ? static_cast<std::size_t>(k)
                                    : n_grid - static_cast<std::size_t>(-k);
    bins[slot] += p.coeff(k) * grid_phase(k, n_grid, layout);
  }
  const auto y = backward(bins);
  std::vector<double> values(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) values[i] = y[i].real();
  return values;
}

}  // namespace detail

TrigPoly fourier_coeffs(const GridDensity& g, int max_lag) {
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= g.n_grid() / 2) {
    throw Error(ErrorCode::grid_too_small,
                "fourier_coeffs: max_lag must be below n_grid / 2");
  }
  return TrigPoly::from_nonnegative(
      detail::grid_fourier(g.values(), g.layout(), max_lag));
}

TrigPoly sqrt_coeffs(const TrigPoly& p, int max_lag, std::size_t n_grid) {
  if (max_lag < 0 || !is_power_of_two(n_grid) ||
      n_grid <= 2 * static_cast<std::size_t>(std::max(max_lag, p.degree()))) {
    throw Error(ErrorCode::grid_too_small,
                "sqrt_coeffs: n_grid must be a power of two above 2 max_lag");
  }
  auto values = detail::fast_sample(p, n_grid);
  for (double& v : values) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::not_positive,
                  "sqrt_coeffs: polynomial is not positive on the grid");
    }
    v = std::sqrt(v);
  }
  auto rho = detail::grid_fourier(values, GridLayout::endpoint, max_lag);
  const double floor = 1e-13 * std::abs(rho[0]);
  int keep = std::min(p.degree(), max_lag);
  for (int k = max_lag; k > keep; --k) {
    if (std::abs(rho[k]) >= floor) {
      keep = k;
      break;
    }
  }
  rho.resize(static_cast<std::size_t>(keep) + 1);
  return TrigPoly::from_nonnegative(std::move(rho));
}

cplx eval_monic(std::span<const cplx> monic, double theta) {
  cplx acc{1.0};
  for (std::size_t k = 0; k < monic.size(); ++k) {
    acc += monic[k] * std::polar(1.0, static_cast<double>(k + 1) * theta);
  }
  return acc;
}

SpectralFactor spectral_factorization(const TrigPoly& p, std::size_t n_grid) {
  int m = p.degree();
  while (m > 0 && p.coeff(m) == cplx{0.0}) --m;
  if (m > max_factor_degree) {
    throw Error(ErrorCode::invalid_argument,
                "spectral_factorization: degree above 32 is not supported");
  }
  n_grid = std::max(n_grid, next_power_of_two(64 * static_cast<std::size_t>(m) + 1));
  const auto grid = detail::fast_sample(p, n_grid);
  const double pmin = *std::min_element(grid.begin(), grid.end());
  const double pmax = *std::max_element(grid.begin(), grid.end());
  if (!(pmin > 0.0)) {
    throw Error(ErrorCode::not_positive,
                "spectral_factorization: polynomial is not positive on the grid");
  }
  if (m == 0) return {{}, p.coeff(0).real()};

  // z^m p(z) as an ordinary polynomial of degree 2m, ascending powers.
  std::vector<cplx> poly(2 * m + 1);
  for (int k = -m; k <= m; ++k) poly[k + m] = p.coeff(k);

  const int d = 2 * m;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -poly[i] / poly[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::root_near_circle,
                "spectral_factorization: eigenvalue iteration failed");
  }

  std::vector<cplx> outside;
  for (int i = 0; i < d; ++i) {
    cplx z = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const cplx dp = horner_derivative(poly, z);
      if (dp == cplx{0.0}) break;
      const cplx next = z - horner(poly, z) / dp;
      if (std::abs(horner(poly, next)) >= std::abs(horner(poly, z))) break;
      z = next;
    }
    const double r = std::abs(z);
    if (std::abs(r - 1.0) <= 1e-8) {
      throw Error(ErrorCode::root_near_circle,
                  "spectral_factorization: root within 1e-8 of the unit circle");
    }
    if (r > 1.0) outside.push_back(z);
  }
  if (static_cast<int>(outside.size()) != m) {
    throw Error(ErrorCode::root_near_circle,
                "spectral_factorization: roots do not split evenly across the "
                "unit circle");
  }

  // prod_i (1 - z / r_i), ascending powers.
  std::vector<cplx> q{1.0};
  for (cplx r : outside) {
    std::vector<cplx> next(q.size() + 1, cplx{0.0});
    for (std::size_t k = 0; k < q.size(); ++k) {
      next[k] += q[k];
      next[k + 1] -= q[k] / r;
    }
    q = std::move(next);
  }
  double energy = 0.0;
  for (cplx v : q) energy += std::norm(v);
  SpectralFactor factor{std::vector<cplx>(q.begin() + 1, q.end()),
                        p.coeff(0).real() / energy};

  double worst = 0.0;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double theta = GridDensity::grid_theta(i, n_grid, GridLayout::endpoint);
    const double model = factor.gain * std::norm(eval_monic(factor.monic, theta));
    worst = std::max(worst, std::abs(grid[i] - model));
  }
  if (worst > 1e-8 * pmax) {
    throw Error(ErrorCode::root_near_circle,
                "spectral_factorization: round-trip error " +
                    std::to_string(worst) + " exceeds 1e-8 max p");
  }
  return factor;
}

}  // namespace fracpole
