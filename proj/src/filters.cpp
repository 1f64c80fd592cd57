#include "fracpole/filters.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "fracpole/detail/summation.hpp"
#include "fracpole/error.hpp"

namespace fracpole {

namespace {

constexpr double vanishing = 1e-300;

bool has_vanishing(const GridDensity& g) {
  for (double v : g.values()) {
    if (v <= vanishing) return true;
  }
  return false;
}

std::vector<double> reciprocals(const GridDensity& g) {
  std::vector<double> inv(g.n_grid());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / g.values()[i];
  return inv;
}

template <typename Scalar>
Scalar as(cplx v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v.real();
  } else {
    return v;
  }
}

template <typename Scalar>
FilterCoeffs solve_window(const AutocovSeq& a, int window) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  // Unknown j <-> coefficient of u_j, j in -window..window without 0.
  std::vector<int> lags;
  for (int j = -window; j <= window; ++j) {
    if (j != 0) lags.push_back(j);
  }
  const int dim = static_cast<int>(lags.size());
  Matrix normal(dim, dim);
  Vector rhs(dim);
  for (int r = 0; r < dim; ++r) {
    rhs[r] = as<Scalar>(a.at(-lags[r]));
    for (int c = 0; c < dim; ++c) normal(r, c) = as<Scalar>(a.at(lags[c] - lags[r]));
  }
  Eigen::LLT<Matrix> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::singular_system,
                "finite_window_smoother: normal equations are singular");
  }
  const Vector gamma = llt.solve(rhs);
  if (!gamma.allFinite()) {
    throw Error(ErrorCode::singular_system,
                "finite_window_smoother: normal equations are singular");
  }
  FilterCoeffs f;
  f.kind = FilterKind::smoother;
  for (int r = 0; r < dim; ++r) f.coeffs[-lags[r]] = cplx(gamma[r]);
  f.variance = std::max(0.0, filter_error_variance(a, f));
  return f;
}

}  // namespace

double harmonic_mean(const GridDensity& g) {
  if (has_vanishing(g)) return 0.0;
  const auto inv = reciprocals(g);
  return 1.0 / detail::mean<double>(inv);
}

double geometric_mean(const GridDensity& g) {
  if (has_vanishing(g)) return 0.0;
  std::vector<double> logs(g.n_grid());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(g.values()[i]);
  return std::exp(detail::mean<double>(logs));
}

double inverse_integral(const GridDensity& g) {
  if (has_vanishing(g)) {
    throw Error(ErrorCode::not_positive, "inverse_integral: density vanishes");
  }
  const auto inv = reciprocals(g);
  return detail::mean<double>(inv);
}

FilterCoeffs optimal_smoother(const GridDensity& g, int max_lag) {
  if (has_vanishing(g)) {
    throw Error(ErrorCode::not_positive,
                "optimal_smoother: density must be positive on the grid");
  }
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= g.n_grid() / 2) {
    throw Error(ErrorCode::grid_too_small,
                "optimal_smoother: max_lag must be below n_grid / 2");
  }
  auto alpha = reciprocals(g);
  const double norm = detail::mean<double>(alpha);
  for (double& v : alpha) v /= norm;
  const auto rho = detail::grid_fourier(alpha, g.layout(), max_lag);
  if (std::abs(rho[0] - 1.0) > 1e-10) {
    throw Error(ErrorCode::not_positive,
                "optimal_smoother: normalization drifted, rho_0 = " +
                    std::to_string(rho[0].real()));
  }
  FilterCoeffs f;
  f.kind = FilterKind::smoother;
  for (int k = 1; k <= max_lag; ++k) {
    // rho_{-k} = conj(rho_k) because alpha is real.
    f.coeffs[k] = -rho[k];
    f.coeffs[-k] = -std::conj(rho[k]);
  }
  f.variance = 1.0 / norm;
  return f;
}

FilterCoeffs finite_window_smoother(const AutocovSeq& a, int window) {
  if (window < 1 || a.n() < 2 * window) {
    throw Error(ErrorCode::invalid_argument,
                "finite_window_smoother: need window >= 1 and R_0..R_{2 window}");
  }
  return a.is_real() ? solve_window<double>(a, window)
                     : solve_window<cplx>(a, window);
}

FilterCoeffs finite_window_smoother(const GridDensity& g, int window) {
  const auto m = moments_of_density(g, 2 * window);
  return finite_window_smoother(m.to_autocov(), window);
}

double filter_error_variance(const AutocovSeq& a, const FilterCoeffs& f) {
  // Error = sum_i c_i u_i with c_0 = 1 and c_{-k} = -coeffs[k].
  std::vector<std::pair<int, cplx>> c{{0, cplx{1.0}}};
  for (const auto& [k, v] : f.coeffs) {
    if (k == 0) {
      throw Error(ErrorCode::invalid_argument, "filter: lag 0 is not allowed");
    }
    c.emplace_back(-k, -v);
  }
  cplx acc{0.0};
  for (const auto& [i, ci] : c) {
    for (const auto& [l, cl] : c) {
      if (std::abs(i - l) > a.n()) {
        throw Error(ErrorCode::invalid_argument,
                    "filter_error_variance: autocorrelation sequence too short");
      }
      acc += ci * a.at(i - l) * std::conj(cl);
    }
  }
  return acc.real();
}

double prediction_variance(const AutocovSeq& a) { return levinson(a).variance; }

}  // namespace fracpole
