#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracpole/filters.hpp"
#include "fracpole/me.hpp"
#include "fracpole/moments.hpp"
#include "fracpole/trigpoly.hpp"
#include "oracles.hpp"

using namespace fracpole;
using std::numbers::pi;

namespace {

TrigPoly random_hermitian(std::mt19937_64& rng, int degree, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cplx> c(degree + 1);
  c[0] = u(rng);
  for (int k = 1; k <= degree; ++k) c[k] = cplx(u(rng), u(rng));
  return TrigPoly::from_nonnegative(c);
}

// Strictly positive: c_0 exceeds the mass of the other coefficients.
TrigPoly random_positive(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(degree + 1);
  double mass = 0.0;
  for (int k = 1; k <= degree; ++k) {
    c[k] = cplx(u(rng), u(rng));
    mass += 2 * std::abs(c[k]);
  }
  c[0] = mass * (1.0 + 0.2 * std::abs(u(rng))) + 0.05;
  return TrigPoly::from_nonnegative(c);
}

}  // namespace

TEST_CASE("evaluation is real") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(-pi, pi);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_hermitian(rng, i % 9);
    const cplx raw = eval_raw(p, t(rng));
    CHECK(std::abs(raw.imag()) <= 1e-12 * p.abs_sum());
  }
}

TEST_CASE("Hermitian closure") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const int degree = i % 9;
    auto c = random_hermitian(rng, degree).nonnegative();
    std::vector<cplx> shifted(c.begin(), c.end());
    shifted[0] = TrigPoly::from_nonnegative(shifted).abs_sum() + 1.0;  // keep samples >= 0
    const auto p = TrigPoly::from_nonnegative(shifted);
    const std::size_t n = std::size_t{1} << (5 + i % 5);
    const auto q = fourier_coeffs(sample_grid(p, n), degree);
    for (int k = -degree; k <= degree; ++k) {
      CHECK(std::abs(q.coeff(k) - p.coeff(k)) <= 1e-12 * p.abs_sum());
    }
  }
}

TEST_CASE("square root coefficients convolve back to the polynomial") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const int degree = 1 + i % 6;
    const auto p = random_positive(rng, degree);
    const auto rho = sqrt_coeffs(p, 400, std::size_t{1} << 12);
    const int m = rho.degree();
    for (int k = -degree - 2; k <= degree + 2; ++k) {
      cplx acc = 0.0;
      for (int l = -m; l <= m; ++l) acc += rho.coeff(l) * rho.coeff(k - l);
      CHECK(std::abs(acc - p.coeff(k)) <= 1e-8 * p.abs_sum());
    }
  }
}

TEST_CASE("factorization round trip") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_positive(rng, 1 + i % 8);
    const auto f = spectral_factorization(p);
    double peak = 0.0, worst = 0.0;
    for (int j = 0; j < 1024; ++j) {
      const double t = -pi + 2 * pi * j / 1024;
      peak = std::max(peak, eval(p, t));
      worst = std::max(worst, std::abs(f.gain * std::norm(eval_monic(f.monic, t)) - eval(p, t)));
    }
    CHECK(worst <= 1e-8 * peak);
    std::vector<cplx> q{1.0};
    q.insert(q.end(), f.monic.begin(), f.monic.end());
    for (const cplx& z : oracle::roots(q)) CHECK(std::abs(z) > 1.0);
  }
}

TEST_CASE("harmonic <= geometric <= arithmetic mean") {
  std::mt19937_64 rng(5);
  std::lognormal_distribution<double> ln(0.0, 1.5);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> v(std::size_t{8} << (i % 6));
    double mean = 0.0;
    for (double& x : v) {
      x = ln(rng);
      mean += x;
    }
    mean /= v.size();
    const GridDensity g(v);
    CHECK(harmonic_mean(g) <= geometric_mean(g) * (1 + 1e-14));
    CHECK(geometric_mean(g) <= mean * (1 + 1e-14));
  }
}

TEST_CASE("biased sample autocovariance is nonnegative definite") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z;
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 6;
    std::vector<double> u(n + 1 + i % 50);
    for (double& x : u) x = z(rng) + (i % 3 == 0 ? 5.0 : 0.0);
    const auto r = sample_autocov(u, n);
    std::vector<cplx> rv(r.values().begin(), r.values().end());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(oracle::toeplitz(rv, n));
    CHECK(eig.eigenvalues().minCoeff() >= -1e-12 * rv[0].real());
  }
}

TEST_CASE("Levinson agrees with a dense solve") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 600; ++i) {
    const int n = 1 + i % 6;
    const auto r = oracle::random_posdef(rng, n, i % 2 == 1);
    const auto lev = levinson(AutocovSeq::from(r));
    const auto dense = oracle::dense_predictor(r);
    for (int k = 0; k < n; ++k) CHECK(std::abs(lev.a[k] - dense.a[k]) < 1e-10);
    CHECK(std::abs(lev.variance - dense.variance) < 1e-10);
    CHECK(lev.variance == doctest::Approx(oracle::toeplitz_det(r, n) /
                                          oracle::toeplitz_det(r, n - 1)).epsilon(1e-9));
  }
}

TEST_CASE("ME densities reproduce their moments") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 6;
    const auto r = oracle::random_posdef(rng, n, i % 2 == 1);
    const auto a = AutocovSeq::from(r);
    const auto m = moments_of_density(sample_me(fit_me(a), std::size_t{1} << 16), n);
    for (int k = -n; k <= n; ++k) CHECK(std::abs(m.at(k) - a.at(k)) <= 1e-8 * r[0].real());
  }
}

TEST_CASE("grid minimum of closed-form cases") {
  for (std::size_t n : {8u, 64u, 1024u}) {
    const auto f0 = min_on_grid(sample_grid(TrigPoly::from_nonnegative({2.0, -1.0}), n));
    CHECK(f0.value == doctest::Approx(0.0));
    const auto c = min_on_grid(sample_grid(TrigPoly::constant(0.7), n));
    CHECK(c.value == 0.7);
    CHECK(c.index == 0);
  }
}
