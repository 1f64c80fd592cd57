#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracpole/benchmark.hpp"
#include "fracpole/error.hpp"
#include "fracpole/filters.hpp"
#include "fracpole/mr.hpp"
#include "oracles.hpp"

using namespace fracpole;
using std::numbers::pi;

namespace {

const MrSolution& benchmark_solution() {
  static const MrSolution sol = solve_mr(benchmark::moments());
  return sol;
}

// Random lambda well inside the cone: lambda_0 dominates the other entries.
LagrangeVector random_lambda(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n + 1);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    v[k] = cplx(u(rng), u(rng));
    sum += std::abs(v[k]);
  }
  v[0] = 2.0 * sum * (1.05 + 0.5 * std::abs(u(rng))) + 0.1;
  return LagrangeVector(v);
}

}  // namespace

TEST_CASE("LagrangeVector") {
  const LagrangeVector l({2.0, cplx(0.3, -0.4), cplx(0.1, 0.2)});
  const auto x = l.coords();
  REQUIRE(x.size() == 5);
  CHECK(x[0] == 2.0);
  CHECK(x[1] == 0.3);
  CHECK(x[2] == -0.4);
  const auto back = LagrangeVector::from_coords(x);
  for (int k = 0; k <= 2; ++k) CHECK(back.values()[k] == l.values()[k]);

  // lambda G = sum lambda_k e^{-j k theta}.
  const double t = 0.9;
  cplx direct = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const cplx lk = k >= 0 ? l.values()[k] : std::conj(l.values()[-k]);
    direct += lk * std::polar(1.0, -k * t);
  }
  CHECK(eval(l.poly(), t) == doctest::Approx(direct.real()).epsilon(1e-14));
  CHECK(std::abs(direct.imag()) < 1e-14);
  CHECK_THROWS_AS(LagrangeVector({cplx(1.0, 1.0)}), Error);
}

TEST_CASE("residual") {
  const auto center = LagrangeVector::unit_center(3);
  const MomentVector flat(AutocovSeq::from_real(std::vector<double>{1, 0, 0, 0}));
  CHECK(residual(center, flat, 1024).inf_norm() < 1e-15);

  const MomentVector target(benchmark::moments());
  const auto r = residual(center, target, 1024);
  CHECK(r.at(0).real() == doctest::Approx(2.0));
  CHECK(r.at(1).real() == doctest::Approx(2.1552));

  const LagrangeVector outside({0.5, 1.0});
  CHECK_THROWS_AS(residual(outside, MomentVector(AutocovSeq::from_real(std::vector<double>{1, 0})), 256), Error);
}

TEST_CASE("jacobian at the unit center") {
  const auto m0 = jacobian(LagrangeVector::unit_center(0), 256);
  REQUIRE(m0.rows() == 1);
  CHECK(m0(0, 0) == doctest::Approx(-0.5));

  const auto m1 = jacobian(LagrangeVector::unit_center(1), 256);
  Eigen::MatrixXd expect = Eigen::Vector3d(-0.5, -1.0, -1.0).asDiagonal();
  CHECK((m1 - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("jacobian against finite differences") {
  std::mt19937_64 rng(5);
  const std::size_t grid = 4096;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const auto l = random_lambda(rng, n);
    REQUIRE(min_lambda_g(l, grid) > 0.0);
    const auto fn = [&](const Eigen::VectorXd& x) {
      return moment_map_coords(LagrangeVector::from_coords(x), grid);
    };
    const auto fd = oracle::finite_jacobian(fn, l.coords(), 1e-5);
    const auto m = jacobian(l, grid);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((m - fd).norm() <= 1e-6 * m.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    CHECK(eig.eigenvalues().maxCoeff() < 0.0);
  }
}

TEST_CASE("white noise is the starting point") {
  const auto sol = solve_mr(AutocovSeq::from_real(std::vector<double>{1, 0, 0, 0}));
  const auto& s = sol.spectrum;
  CHECK(s.lambda.values()[0] == cplx(1.0));
  for (int k = 1; k <= 3; ++k) CHECK(s.lambda.values()[k] == cplx(0.0));
  CHECK(s.k2 == doctest::Approx(1.0));
  CHECK(sol.diagnostics.iterations == 0);
  CHECK(eval_mr(s, 0.4) == 1.0);
  CHECK(s.kappa() == doctest::Approx(1.0));
}

TEST_CASE("benchmark MR spectrum") {
  const auto& sol = benchmark_solution();
  const auto& s = sol.spectrum;
  const double lambda[] = {3.51551123, -2.58750567, 0.97054492, -0.12637041};
  for (int k = 0; k <= 3; ++k) {
    CHECK(s.lambda.values()[k].real() == doctest::Approx(lambda[k]).epsilon(1e-7));
    CHECK(s.lambda.values()[k].imag() == 0.0);
  }
  CHECK(s.kappa() == doctest::Approx(1.1229193266).epsilon(1e-8));
  CHECK(s.kappa2 == doctest::Approx(1.26094781415).epsilon(1e-8));
  CHECK(1.0 / s.k2 == doctest::Approx(1.45512809451).epsilon(1e-8));
  CHECK(sol.diagnostics.relative_residual <= 1e-8);
  CHECK(sol.diagnostics.min_lambda_g > 0.0);
  CHECK(sol.diagnostics.min_lambda_g == doctest::Approx(0.0041544).epsilon(1e-3));

  CHECK(eval_mr(s, 0.5) > eval_mr(s, pi));

  const auto g = sample_mr(s, std::size_t{1} << 14);
  double mean = 0.0;
  for (double v : g.values()) mean += v;
  CHECK(std::abs(mean / g.n_grid() - 3.0) < 1e-4);

  // f = 1 / sqrt(lambda G) = k2 / sqrt(b) = kappa^2 / |monic|.
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n_grid(); i += 7) {
    const double t = g.theta(i);
    const double f = g.values()[i];
    worst = std::max(worst, std::abs(s.k2 / std::sqrt(eval(s.b, t)) - f) / f);
    worst = std::max(worst, std::abs(s.kappa2 / std::abs(eval_monic(s.factor, t)) - f) / f);
  }
  CHECK(worst < 1e-8);

  CHECK(harmonic_mean(g) == doctest::Approx(s.k2).epsilon(1e-6));
}

TEST_CASE("residual at the solution on a finer grid") {
  const auto& s = benchmark_solution().spectrum;
  const MomentVector target(benchmark::moments());
  CHECK(residual(s.lambda, target, std::size_t{1} << 16).inf_norm() < 1e-6);
}

TEST_CASE("tightening the tolerance moves the solution by O(tol)") {
  const auto a = benchmark::moments();
  MrOptions loose;
  loose.tol = 1e-6;
  MrOptions tight;
  tight.tol = 1e-7;
  const auto l1 = solve_mr(a, loose).spectrum.lambda.coords();
  const auto l2 = solve_mr(a, tight).spectrum.lambda.coords();
  // The Jacobian inverse is O(10^2) here.
  CHECK((l1 - l2).cwiseAbs().maxCoeff() < 1e3 * loose.tol);
}

TEST_CASE("complex data") {
  const auto a = AutocovSeq::from({2.0, cplx(0.6, 0.8), cplx(-0.2, 0.5)});
  const auto sol = solve_mr(a);
  const auto r = residual(sol.spectrum.lambda, MomentVector(a), std::size_t{1} << 14);
  CHECK(r.inf_norm() <= 1e-8 * 2.0);
  CHECK(std::abs(sol.spectrum.lambda.values()[1].imag()) > 1e-3);
}

TEST_CASE("small instance against a projected-gradient oracle") {
  const std::size_t grid = 256;
  MrOptions opts;
  opts.n_grid = grid;
  opts.tol = 1e-12;
  opts.refine_grid = false;
  const auto sol = solve_mr(AutocovSeq::from_real(std::vector<double>{1.0, 0.3}), opts);
  const auto f = sample_mr(sol.spectrum, grid);
  const auto ref = oracle::min_inverse_integral(1.0, 0.3, static_cast<int>(grid));
  double sup = 0.0;
  for (std::size_t i = 0; i < grid; ++i) sup = std::max(sup, std::abs(f.values()[i] - ref[i]));
  CHECK(sup < 1e-3);
}

TEST_CASE("errors and diagnostics") {
  CHECK_THROWS_AS(solve_mr(AutocovSeq::from_real(std::vector<double>{1, 1})), Error);
  MrOptions bad_tol;
  bad_tol.tol = 0.1;
  CHECK_THROWS_AS(solve_mr(benchmark::moments(), bad_tol), Error);

  MrOptions short_budget;
  short_budget.max_iterations = 1;
  try {
    solve_mr(benchmark::moments(), short_budget);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
    CHECK(e.diagnostics().iterations == 1);
    CHECK(e.diagnostics().min_lambda_g > 0.0);
    CHECK(e.diagnostics().residual_history.size() == 2);
  }
}

TEST_CASE("iterates stay in the cone and the residual decreases") {
  const auto& d = benchmark_solution().diagnostics;
  REQUIRE(d.residual_history.size() >= 2);
  for (std::size_t i = 1; i < d.residual_history.size(); ++i) {
    CHECK(d.residual_history[i] < d.residual_history[i - 1]);
  }
  for (double s : d.step_history) CHECK(s > 0.0);
}

TEST_CASE("homotopy path reaches the same fixed point") {
  const auto a = benchmark::moments();
  const auto path = trace_homotopy(a, 1024, std::size_t{1} << 12);
  REQUIRE(path.lambda.size() == 1025);
  CHECK(path.tau.front() == 0.0);
  CHECK(path.tau.back() == doctest::Approx(1.0));
  for (const auto& l : path.lambda) CHECK(min_lambda_g(l, std::size_t{1} << 12) > 0.0);
  const auto end = path.lambda.back().coords();
  const auto newton = benchmark_solution().spectrum.lambda.coords();
  CHECK((end - newton).cwiseAbs().maxCoeff() < 1e-6);
}
