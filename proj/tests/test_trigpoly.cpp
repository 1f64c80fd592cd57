#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracpole/benchmark.hpp"
#include "fracpole/error.hpp"
#include "fracpole/me.hpp"
#include "fracpole/mr.hpp"
#include "fracpole/trigpoly.hpp"
#include "oracles.hpp"

using namespace fracpole;
using std::numbers::pi;

namespace {

TrigPoly f0_poly() { return TrigPoly::from_nonnegative({2.0, -1.0}); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception thrown");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("eval of simple polynomials") {
  CHECK(eval(TrigPoly::constant(1.0), 1.3) == 1.0);
  CHECK(eval(f0_poly(), 0.0) == doctest::Approx(0.0));
  CHECK(eval(f0_poly(), pi / 2) == doctest::Approx(2.0));
  CHECK(eval(f0_poly(), pi) == doctest::Approx(4.0));

  // Complex coefficient: 1 + (0.3 + 0.4j) e^{j t} + conj(...) e^{-j t}.
  const auto p = TrigPoly::from_nonnegative({1.0, cplx(0.3, 0.4)});
  const double t = 0.7;
  CHECK(eval(p, t) == doctest::Approx(1.0 + 0.6 * std::cos(t) - 0.8 * std::sin(t)));
}

TEST_CASE("construction checks") {
  CHECK(code_of([] { TrigPoly::from_nonnegative({cplx(1.0, 0.1)}); }) ==
        ErrorCode::invalid_argument);
  const std::vector<cplx> sym{cplx(-1, -2), 3.0, cplx(-1, 2)};
  const auto p = TrigPoly::from_symmetric(sym);
  CHECK(p.degree() == 1);
  CHECK(p.coeff(1) == cplx(-1, 2));
  CHECK(p.coeff(-1) == cplx(-1, -2));
  CHECK(p.coeff(5) == cplx(0.0));
  const std::vector<cplx> skew{1.0, 3.0, 2.0};
  CHECK(code_of([&] { TrigPoly::from_symmetric(skew); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { GridDensity(std::vector<double>(12, 1.0)); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { GridDensity(std::vector<double>{1, 1, 1, -1, 1, 1, 1, 1}); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("sample_grid") {
  const auto ones = sample_grid(TrigPoly::constant(1.0), 8);
  CHECK(std::all_of(ones.values().begin(), ones.values().end(),
                    [](double v) { return v == 1.0; }));

  const auto g = sample_grid(f0_poly(), 8);
  CHECK(g.values()[0] == doctest::Approx(4.0));
  CHECK(g.theta(0) == doctest::Approx(-pi));
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(g.values()[i] == doctest::Approx(2.0 - 2.0 * std::cos(g.theta(i))));
  }

  const auto p5 = TrigPoly::from_nonnegative({1, 0, 0, 0, 0.1});
  CHECK(code_of([&] { sample_grid(p5, 8); }) == ErrorCode::grid_too_small);
  CHECK_NOTHROW(sample_grid(p5, 16));
}

TEST_CASE("fast_sample agrees with pointwise evaluation") {
  const auto p = TrigPoly::from_nonnegative({3.0, cplx(0.5, -0.2), cplx(-0.1, 0.3), 0.05});
  for (auto layout : {GridLayout::endpoint, GridLayout::midpoint}) {
    const auto fast = detail::fast_sample(p, 64, layout);
    for (std::size_t i = 0; i < 64; ++i) {
      CHECK(fast[i] ==
            doctest::Approx(eval(p, GridDensity::grid_theta(i, 64, layout))).epsilon(1e-13));
    }
  }
}

TEST_CASE("min_on_grid") {
  const auto m1 = min_on_grid(GridDensity(std::vector<double>(8, 1.0)));
  CHECK(m1.theta == doctest::Approx(-pi));
  CHECK(m1.value == 1.0);
  CHECK(m1.index == 0);

  const auto m0 = min_on_grid(sample_grid(f0_poly(), 8));
  CHECK(m0.theta == doctest::Approx(0.0));
  CHECK(m0.value == doctest::Approx(0.0));
  CHECK(m0.index == 4);
}

TEST_CASE("ME denominator and its roots") {
  const auto me = fit_me(benchmark::moments());
  std::vector<cplx> q{1.0};
  q.insert(q.end(), me.a.begin(), me.a.end());
  for (const cplx& r : oracle::roots(q)) CHECK(std::abs(r) > 1.0);

  std::vector<double> den(1 << 14);
  for (std::size_t i = 0; i < den.size(); ++i) {
    den[i] = std::norm(eval_monic(me.a, GridDensity::grid_theta(i, den.size(),
                                                                GridLayout::endpoint)));
  }
  CHECK(min_on_grid(GridDensity(den)).value > 0.0);
}

TEST_CASE("fourier_coeffs") {
  const auto c1 = fourier_coeffs(GridDensity(std::vector<double>(16, 1.0)), 3);
  CHECK(std::abs(c1.coeff(0) - 1.0) < 1e-15);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(c1.coeff(k)) < 1e-15);

  const auto c0 = fourier_coeffs(sample_grid(f0_poly(), 32), 4);
  CHECK(std::abs(c0.coeff(0) - 2.0) < 1e-14);
  CHECK(std::abs(c0.coeff(1) + 1.0) < 1e-14);
  CHECK(std::abs(c0.coeff(-1) + 1.0) < 1e-14);
  for (int k = 2; k <= 4; ++k) CHECK(std::abs(c0.coeff(k)) < 1e-14);

  // Midpoint grid gives the same coefficients.
  const auto cm = fourier_coeffs(sample_grid(f0_poly(), 32, GridLayout::midpoint), 4);
  CHECK(std::abs(cm.coeff(1) + 1.0) < 1e-14);
  CHECK(std::abs(cm.coeff(2)) < 1e-14);
}

TEST_CASE("sqrt_coeffs") {
  const auto s4 = sqrt_coeffs(TrigPoly::constant(4.0), 10, 256);
  CHECK(s4.degree() == 0);
  CHECK(s4.coeff(0).real() == doctest::Approx(2.0));

  // |1 + 0.5 e^{j theta}|^2 = 1.25 + cos theta.
  const auto p = TrigPoly::from_nonnegative({1.25, 0.5});
  const auto rho = sqrt_coeffs(p, 40, std::size_t{1} << 18);
  const auto ref = oracle::sqrt_abs_linear(0.5, 40);
  for (int k = 0; k <= std::min(rho.degree(), 40); ++k) {
    CHECK(std::abs(rho.coeff(k) - ref[k]) < 1e-13);
  }
  CHECK(rho.degree() >= 10);
  CHECK(rho.degree() < 40);  // trimmed once below 1e-13 rho_0

  CHECK(code_of([] { sqrt_coeffs(TrigPoly::from_nonnegative({2.0, -1.0}), 4, 256); }) ==
        ErrorCode::not_positive);
}

TEST_CASE("normalized b of the benchmark MR spectrum") {
  const auto sol = solve_mr(benchmark::moments());
  const auto& b = sol.spectrum.b;
  const auto rho = sqrt_coeffs(b, 50, std::size_t{1} << 16);
  CHECK(std::abs(rho.coeff(0) - 1.0) < 1e-8);

  std::vector<double> root_b(std::size_t{1} << 16);
  for (std::size_t i = 0; i < root_b.size(); ++i) {
    root_b[i] = std::sqrt(eval(b, GridDensity::grid_theta(i, root_b.size(),
                                                         GridLayout::endpoint)));
  }
  CHECK(std::abs(fourier_coeffs(GridDensity(root_b), 50).coeff(0) - 1.0) < 1e-6);
}

TEST_CASE("spectral_factorization") {
  const auto c = spectral_factorization(TrigPoly::constant(4.0));
  CHECK(c.monic.empty());
  CHECK(c.gain == doctest::Approx(4.0));

  // 2.5 + 2 cos theta: z p(z) = z^2 + 2.5 z + 1.
  const auto p = TrigPoly::from_nonnegative({2.5, 1.0});
  const auto roots = oracle::roots({1.0, 2.5, 1.0});
  const cplx outside = std::abs(roots[0]) > 1.0 ? roots[0] : roots[1];
  CHECK(std::abs(outside + 2.0) < 1e-12);
  const auto f = spectral_factorization(p);
  REQUIRE(f.monic.size() == 1);
  CHECK(std::abs(f.monic[0] + 1.0 / outside) < 1e-12);  // 1 - z / r
  CHECK(f.gain == doctest::Approx(2.0));

  // Complex, degree 3, against a reconstruction on the grid.
  const auto q = TrigPoly::from_nonnegative({4.0, cplx(1.0, 0.5), cplx(-0.3, 0.2), 0.1});
  const auto fq = spectral_factorization(q);
  std::vector<cplx> monic{1.0};
  monic.insert(monic.end(), fq.monic.begin(), fq.monic.end());
  for (const cplx& r : oracle::roots(monic)) CHECK(std::abs(r) > 1.0);
  for (int i = 0; i < 512; ++i) {
    const double t = -pi + 2 * pi * i / 512;
    CHECK(std::abs(fq.gain * std::norm(eval_monic(fq.monic, t)) - eval(q, t)) < 1e-12);
  }

  // Double-ish root just off the circle, midway between grid points so
  // the grid values stay clearly positive.
  const double r = 1.0 - 1e-9;
  const double phi = pi / static_cast<double>(default_grid);
  const auto near = TrigPoly::from_nonnegative({1.0 + r * r, -r * std::polar(1.0, -phi)});
  CHECK(code_of([&] { spectral_factorization(near); }) == ErrorCode::root_near_circle);
  CHECK(code_of([] { spectral_factorization(TrigPoly::from_nonnegative({2.0, -1.0})); }) ==
        ErrorCode::not_positive);
}

TEST_CASE("factorization of the benchmark lambda G") {
  const auto sol = solve_mr(benchmark::moments());
  const auto poly = sol.spectrum.lambda.poly();
  CHECK(min_on_grid(sample_grid(poly, std::size_t{1} << 14)).value > 0.0);

  // Oracle: roots of z^3 (lambda G)(z) as an ordinary polynomial. lambda G
  // carries c_k = conj(lambda_k) on e^{j k theta}.
  std::vector<cplx> ordinary(7);
  for (int k = -3; k <= 3; ++k) ordinary[k + 3] = poly.coeff(k);
  std::vector<cplx> outside;
  for (const cplx& r : oracle::roots(ordinary)) {
    CHECK(std::abs(std::abs(r) - 1.0) > 1e-3);
    if (std::abs(r) > 1.0) outside.push_back(r);
  }
  REQUIRE(outside.size() == 3);
  std::vector<cplx> q{1.0};
  for (const cplx& r : outside) {
    std::vector<cplx> next(q.size() + 1, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i] += q[i];
      next[i + 1] -= q[i] / r;
    }
    q = next;
  }

  const auto f = spectral_factorization(poly);
  REQUIRE(f.monic.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(f.monic[k] - q[k + 1]) < 1e-10);
  CHECK(f.monic[0].real() == doctest::Approx(-1.77201103).epsilon(1e-7));
  CHECK(f.monic[1].real() == doctest::Approx(1.18711017).epsilon(1e-7));
  CHECK(f.monic[2].real() == doctest::Approx(-0.20092762).epsilon(1e-7));
  CHECK(std::pow(f.gain, -0.25) == doctest::Approx(1.1229193266).epsilon(1e-8));

  double peak = 0.0, worst = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double t = -pi + 2 * pi * i / 4096;
    peak = std::max(peak, eval(poly, t));
    worst = std::max(worst, std::abs(f.gain * std::norm(eval_monic(f.monic, t)) - eval(poly, t)));
  }
  CHECK(worst <= 1e-8 * peak);
}
