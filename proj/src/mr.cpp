#include "fracpole/mr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracpole/detail/summation.hpp"

namespace fracpole {

LagrangeVector::LagrangeVector(std::vector<cplx> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::invalid_argument, "lagrange: empty vector");
  }
  for (cplx v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::invalid_argument, "lagrange: non-finite entry");
    }
  }
  if (std::abs(values_[0].imag()) > 1e-12 * std::max(1.0, std::abs(values_[0].real()))) {
    throw Error(ErrorCode::invalid_argument, "lagrange: lambda_0 must be real");
  }
  values_[0] = values_[0].real();
}

LagrangeVector LagrangeVector::unit_center(int n) {
  std::vector<cplx> v(static_cast<std::size_t>(n) + 1, cplx{0.0});
  v[0] = 1.0;
  return LagrangeVector(std::move(v));
}

LagrangeVector LagrangeVector::from_coords(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size()) / 2;
  std::vector<cplx> v(static_cast<std::size_t>(n) + 1);
  v[0] = x[0];
  for (int k = 1; k <= n; ++k) v[k] = {x[2 * k - 1], x[2 * k]};
  return LagrangeVector(std::move(v));
}

Eigen::VectorXd LagrangeVector::coords() const {
  Eigen::VectorXd x(2 * n() + 1);
  x[0] = values_[0].real();
  for (int k = 1; k <= n(); ++k) {
    x[2 * k - 1] = values_[k].real();
    x[2 * k] = values_[k].imag();
  }
  return x;
}

TrigPoly LagrangeVector::poly() const {
  std::vector<cplx> c(values_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::conj(values_[k]);
  return TrigPoly::from_nonnegative(std::move(c));
}

double MrSpectrum::kappa() const { return std::sqrt(kappa2); }

namespace {

// lambda G on the grid plus the Fourier data every consumer needs.
struct GridState {
  std::vector<double> lambda_g;
  double min_value = 0.0;
  std::vector<cplx> moments;  // c_k of (lambda G)^{-1/2}, k = 0..n
};

void check_grid(const LagrangeVector& lambda, std::size_t n_grid) {
  if (!is_power_of_two(n_grid) ||
      n_grid <= 4 * static_cast<std::size_t>(lambda.n()) || n_grid < 8) {
    throw Error(ErrorCode::grid_too_small,
                "mr: n_grid must be a power of two above 4n");
  }
}

// Fills lambda_g/min_value; returns false if lambda is outside the cone.
bool sample_lambda(const LagrangeVector& lambda, std::size_t n_grid,
                   GridState& st) {
  check_grid(lambda, n_grid);
  st.lambda_g = detail::fast_sample(lambda.poly(), n_grid);
  st.min_value = *std::min_element(st.lambda_g.begin(), st.lambda_g.end());
  return st.min_value > 0.0 && std::isfinite(st.min_value);
}

bool evaluate(const LagrangeVector& lambda, std::size_t n_grid, GridState& st) {
  if (!sample_lambda(lambda, n_grid, st)) return false;
  std::vector<double> f(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) f[i] = 1.0 / std::sqrt(st.lambda_g[i]);
  st.moments = detail::grid_fourier(f, GridLayout::endpoint, lambda.n());
  return true;
}

[[noreturn]] void throw_not_in_cone(double min_value) {
  throw Error(ErrorCode::not_in_cone,
              "mr: lambda G is not positive on the grid (min " +
                  std::to_string(min_value) + ")");
}

MomentVector to_moments(std::span<const cplx> c) {
  return MomentVector::from_nonnegative(c);
}

// Jacobian from the Fourier coefficients W_0..W_{2n} of (lambda G)^{-3/2}.
Eigen::MatrixXd jacobian_from_weights(std::span<const cplx> w, int n) {
  auto re = [&](int m) { return w[std::abs(m)].real(); };
  // mean(w sin m theta) with W_{-m} = conj(W_m)
  auto sn = [&](int m) {
    return m >= 0 ? -w[m].imag() : w[-m].imag();
  };
  const int dim = 2 * n + 1;
  Eigen::MatrixXd g(dim, dim);
  g(0, 0) = re(0);
  for (int k = 1; k <= n; ++k) {
    g(0, 2 * k - 1) = g(2 * k - 1, 0) = 2.0 * re(k);
    g(0, 2 * k) = g(2 * k, 0) = 2.0 * sn(k);
  }
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) {
      g(2 * i - 1, 2 * k - 1) = 2.0 * (re(i - k) + re(i + k));
      g(2 * i, 2 * k) = 2.0 * (re(i - k) - re(i + k));
      // cos(i theta) in the row, sin(k theta) in the column.
      g(2 * i - 1, 2 * k) = 2.0 * (sn(k + i) + sn(k - i));
      g(2 * k, 2 * i - 1) = g(2 * i - 1, 2 * k);
    }
  }
  return -0.5 * g;
}

Eigen::MatrixXd jacobian_of(const LagrangeVector& lambda, const GridState& st) {
  const int n = lambda.n();
  std::vector<double> w(st.lambda_g.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::pow(st.lambda_g[i], -1.5);
  }
  const auto weights = detail::grid_fourier(w, GridLayout::endpoint, 2 * n);
  return jacobian_from_weights(weights, n);
}

Eigen::VectorXd coords_of(std::span<const cplx> c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::VectorXd z(2 * n + 1);
  z[0] = c[0].real();
  for (int k = 1; k <= n; ++k) {
    z[2 * k - 1] = 2.0 * c[k].real();
    z[2 * k] = -2.0 * c[k].imag();
  }
  return z;
}

double residual_norm(const MomentVector& target, std::span<const cplx> c) {
  const int n = target.n();
  double r = std::abs(target.at(0) - c[0].real());
  for (int k = 1; k <= n; ++k) r = std::max(r, std::abs(target.at(k) - c[k]));
  return r;
}

// Indices of the active real coordinates.
std::vector<int> active_coords(int n, bool real_only) {
  std::vector<int> idx{0};
  for (int k = 1; k <= n; ++k) {
    idx.push_back(2 * k - 1);
    if (!real_only) idx.push_back(2 * k);
  }
  return idx;
}

// Solves M d = r restricted to the active coordinates; false on failure.
bool newton_direction(const Eigen::MatrixXd& m, const Eigen::VectorXd& r,
                      const std::vector<int>& idx, Eigen::VectorXd& d) {
  const int dim = static_cast<int>(idx.size());
  Eigen::MatrixXd sub(dim, dim);
  Eigen::VectorXd rhs(dim);
  for (int i = 0; i < dim; ++i) {
    rhs[i] = r[idx[i]];
    for (int j = 0; j < dim; ++j) sub(i, j) = m(idx[i], idx[j]);
  }
  // -M is symmetric positive definite inside the cone.
  Eigen::LLT<Eigen::MatrixXd> llt(-sub);
  if (llt.info() != Eigen::Success) return false;
  const Eigen::VectorXd sol = -llt.solve(rhs);
  if (!sol.allFinite()) return false;
  d = Eigen::VectorXd::Zero(m.rows());
  for (int i = 0; i < dim; ++i) d[idx[i]] = sol[i];
  return true;
}

}  // namespace

double min_lambda_g(const LagrangeVector& lambda, std::size_t n_grid) {
  GridState st;
  sample_lambda(lambda, n_grid, st);
  return st.min_value;
}

MomentVector moment_map(const LagrangeVector& lambda, std::size_t n_grid) {
  GridState st;
  if (!evaluate(lambda, n_grid, st)) throw_not_in_cone(st.min_value);
  return to_moments(st.moments);
}

MomentVector residual(const LagrangeVector& lambda, const MomentVector& target,
                      std::size_t n_grid) {
  if (target.n() != lambda.n()) {
    throw Error(ErrorCode::invalid_argument, "residual: order mismatch");
  }
  const auto h = moment_map(lambda, n_grid);
  std::vector<cplx> d(static_cast<std::size_t>(target.n()) + 1);
  for (int k = 0; k <= target.n(); ++k) d[k] = target.at(k) - h.at(k);
  return MomentVector::from_nonnegative(d);
}

Eigen::VectorXd moment_coords(const MomentVector& m) {
  std::vector<cplx> c(static_cast<std::size_t>(m.n()) + 1);
  for (int k = 0; k <= m.n(); ++k) c[k] = m.at(k);
  return coords_of(c);
}

Eigen::VectorXd moment_map_coords(const LagrangeVector& lambda,
                                  std::size_t n_grid) {
  GridState st;
  if (!evaluate(lambda, n_grid, st)) throw_not_in_cone(st.min_value);
  return coords_of(st.moments);
}

Eigen::MatrixXd jacobian(const LagrangeVector& lambda, std::size_t n_grid) {
  GridState st;
  if (!sample_lambda(lambda, n_grid, st)) throw_not_in_cone(st.min_value);
  return jacobian_of(lambda, st);
}

MrSpectrum make_mr_spectrum(const LagrangeVector& lambda, std::size_t n_grid) {
  GridState st;
  if (!sample_lambda(lambda, n_grid, st)) throw_not_in_cone(st.min_value);
  std::vector<double> root(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) root[i] = std::sqrt(st.lambda_g[i]);
  const double c = detail::mean<double>(root);

  MrSpectrum s;
  s.n = lambda.n();
  s.lambda = lambda;
  s.k2 = 1.0 / c;
  std::vector<cplx> b(lambda.values().size());
  const auto poly = lambda.poly();
  for (int k = 0; k <= s.n; ++k) b[k] = s.k2 * s.k2 * poly.coeff(k);
  s.b = TrigPoly::from_nonnegative(std::move(b));
  auto factor = spectral_factorization(poly, n_grid);
  s.factor = std::move(factor.monic);
  s.kappa2 = 1.0 / std::sqrt(factor.gain);
  return s;
}

MrSolution solve_mr(const AutocovSeq& a, const MrOptions& options) {
  if (!(options.tol > 0.0 && options.tol <= 1e-2)) {
    throw Error(ErrorCode::invalid_argument, "solve_mr: tol must be in (0, 1e-2]");
  }
  if (!is_posdef(a).posdef) {
    throw Error(ErrorCode::not_posdef,
                "solve_mr: Toeplitz matrix is not positive definite");
  }
  const int n = a.n();
  const MomentVector target(a);
  const Eigen::VectorXd target_z = moment_coords(target);
  const double scale = target.inf_norm();
  const auto idx = active_coords(n, a.is_real());

  MrDiagnostics diag;
  std::size_t n_grid = options.n_grid;
  LagrangeVector lambda = LagrangeVector::unit_center(n);
  GridState st;
  if (!evaluate(lambda, n_grid, st)) throw_not_in_cone(st.min_value);
  double rnorm = residual_norm(target, st.moments);

  auto fill = [&] {
    diag.residual_inf = rnorm;
    diag.relative_residual = rnorm / scale;
    diag.min_lambda_g = st.min_value;
    diag.n_grid = n_grid;
  };

  while (true) {
    diag.residual_history.push_back(rnorm / scale);
    if (rnorm <= options.tol * scale) {
      const double near = 100.0 / (static_cast<double>(n_grid) * n_grid);
      if (options.refine_grid && st.min_value < near &&
          n_grid < options.max_grid) {
        n_grid *= 2;
        ++diag.refinements;
        if (!evaluate(lambda, n_grid, st)) throw_not_in_cone(st.min_value);
        rnorm = residual_norm(target, st.moments);
        continue;
      }
      break;
    }
    if (diag.iterations >= options.max_iterations) {
      fill();
      throw NoConvergence("solve_mr: iteration budget exhausted", diag);
    }
    ++diag.iterations;

    const Eigen::VectorXd r = target_z - coords_of(st.moments);
    Eigen::VectorXd d;
    if (!newton_direction(jacobian_of(lambda, st), r, idx, d)) {
      fill();
      throw NoConvergence("solve_mr: Jacobian factorization failed", diag);
    }
    const Eigen::VectorXd x = lambda.coords();
    bool accepted = false;
    double s = 1.0;
    for (int halving = 0; halving <= 20; ++halving, s *= 0.5) {
      LagrangeVector trial = LagrangeVector::from_coords(x + s * d);
      GridState trial_state;
      if (!evaluate(trial, n_grid, trial_state)) continue;
      const double trial_norm = residual_norm(target, trial_state.moments);
      if (trial_norm < rnorm) {
        lambda = std::move(trial);
        st = std::move(trial_state);
        rnorm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      fill();
      throw NoConvergence("solve_mr: no admissible step reduces the residual",
                          diag);
    }
    diag.step_history.push_back(s);
  }

  fill();
  return {make_mr_spectrum(lambda, n_grid), std::move(diag)};
}

double eval_mr(const MrSpectrum& s, double theta) {
  return 1.0 / std::sqrt(eval(s.lambda.poly(), theta));
}

GridDensity sample_mr(const MrSpectrum& s, std::size_t n_grid,
                      GridLayout layout) {
  const auto poly = s.lambda.poly();
  std::vector<double> v(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double lg = eval(poly, GridDensity::grid_theta(i, n_grid, layout));
    if (!(lg > 0.0)) throw_not_in_cone(lg);
    v[i] = 1.0 / std::sqrt(lg);
  }
  return GridDensity(std::move(v), layout);
}

HomotopyPath trace_homotopy(const AutocovSeq& a, int steps, std::size_t n_grid) {
  if (steps < 1) {
    throw Error(ErrorCode::invalid_argument, "trace_homotopy: steps must be >= 1");
  }
  if (!is_posdef(a).posdef) {
    throw Error(ErrorCode::not_posdef,
                "trace_homotopy: Toeplitz matrix is not positive definite");
  }
  const int n = a.n();
  const auto idx = active_coords(n, a.is_real());
  LagrangeVector lambda = LagrangeVector::unit_center(n);
  const Eigen::VectorXd drive =
      moment_coords(MomentVector(a)) - moment_map_coords(lambda, n_grid);

  auto velocity = [&](const Eigen::VectorXd& x) {
    const auto l = LagrangeVector::from_coords(x);
    GridState st;
    if (!sample_lambda(l, n_grid, st)) throw_not_in_cone(st.min_value);
    Eigen::VectorXd d;
    if (!newton_direction(jacobian_of(l, st), drive, idx, d)) {
      throw Error(ErrorCode::not_in_cone, "trace_homotopy: singular Jacobian");
    }
    return d;
  };

  HomotopyPath path;
  path.tau.push_back(0.0);
  path.lambda.push_back(lambda);
  Eigen::VectorXd x = lambda.coords();
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const Eigen::VectorXd k1 = velocity(x);
    const Eigen::VectorXd k2 = velocity(x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = velocity(x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = velocity(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    path.tau.push_back((i + 1) * h);
    path.lambda.push_back(LagrangeVector::from_coords(x));
  }
  return path;
}

}  // namespace fracpole
