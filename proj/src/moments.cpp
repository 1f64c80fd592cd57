#include "fracpole/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracpole/error.hpp"

namespace fracpole {

AutocovSeq AutocovSeq::from(std::vector<cplx> r) {
  if (r.empty()) {
    throw Error(ErrorCode::invalid_argument, "autocov: need at least R_0");
  }
  for (cplx v : r) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::invalid_argument, "autocov: non-finite entry");
    }
  }
  const double r0 = r[0].real();
  if (std::abs(r[0].imag()) > 1e-12 * std::abs(r0) || r0 < 0.0) {
    throw Error(ErrorCode::invalid_argument,
                "autocov: R_0 must be real and nonnegative");
  }
  r[0] = r0;
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (std::abs(r[k]) > r0 * (1.0 + 1e-12)) {
      throw Error(ErrorCode::invalid_argument,
                  "autocov: |R_" + std::to_string(k) + "| exceeds R_0");
    }
  }
  return AutocovSeq(std::move(r));
}

AutocovSeq AutocovSeq::from_real(std::span<const double> r) {
  return from(std::vector<cplx>(r.begin(), r.end()));
}

cplx AutocovSeq::at(int k) const noexcept {
  return k >= 0 ? r_[k] : std::conj(r_[-k]);
}

bool AutocovSeq::is_real() const noexcept {
  return std::all_of(r_.begin(), r_.end(),
                     [](cplx v) { return v.imag() == 0.0; });
}

MomentVector::MomentVector(const AutocovSeq& a) {
  const int n = a.n();
  entries_.resize(2 * n + 1);
  for (int k = -n; k <= n; ++k) entries_[n + k] = a.at(k);
}

MomentVector MomentVector::from_nonnegative(std::span<const cplx> r) {
  MomentVector m;
  const int n = static_cast<int>(r.size()) - 1;
  m.entries_.resize(2 * n + 1);
  m.entries_[n] = r[0].real();
  for (int k = 1; k <= n; ++k) {
    m.entries_[n + k] = r[k];
    m.entries_[n - k] = std::conj(r[k]);
  }
  return m;
}

double MomentVector::inf_norm() const noexcept {
  double v = 0.0;
  for (cplx e : entries_) v = std::max(v, std::abs(e));
  return v;
}

AutocovSeq MomentVector::to_autocov() const {
  return AutocovSeq::from(
      std::vector<cplx>(entries_.begin() + n(), entries_.end()));
}

namespace {

constexpr double reflection_limit = 1.0 - 1e-12;

// Runs the recursion until it completes or hits a non-admissible order.
LevinsonResult recurse(const AutocovSeq& seq, bool& ok) {
  LevinsonResult out;
  ok = false;
  double e = seq.at(0).real();
  out.variances.push_back(e);
  if (!(e > 0.0)) return out;

  std::vector<cplx> a;
  for (int m = 1; m <= seq.n(); ++m) {
    cplx acc = seq.at(m);
    for (int k = 1; k < m; ++k) acc += a[k - 1] * seq.at(m - k);
    const cplx km = -acc / e;
    out.reflection.push_back(-km);
    if (!(std::abs(km) < reflection_limit)) return out;

    std::vector<cplx> next(m);
    for (int k = 1; k < m; ++k) next[k - 1] = a[k - 1] + km * std::conj(a[m - k - 1]);
    next[m - 1] = km;
    a = std::move(next);
    e *= 1.0 - std::norm(km);
    out.variances.push_back(e);
    if (!(e > 0.0)) return out;
  }
  out.a = std::move(a);
  out.variance = e;
  ok = true;
  return out;
}

}  // namespace

PosdefReport is_posdef(const AutocovSeq& a) {
  bool ok = false;
  auto r = recurse(a, ok);
  return {ok, std::move(r.reflection), std::move(r.variances)};
}

LevinsonResult levinson(const AutocovSeq& a) {
  bool ok = false;
  auto r = recurse(a, ok);
  if (!ok) {
    throw Error(ErrorCode::not_posdef,
                "levinson: Toeplitz matrix is not positive definite");
  }
  return r;
}

MomentVector moments_of_density(const GridDensity& g, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= g.n_grid() / 2) {
    throw Error(ErrorCode::grid_too_small,
                "moments_of_density: n must be below n_grid / 2");
  }
  const auto c = detail::grid_fourier(g.values(), g.layout(), n);
  return MomentVector::from_nonnegative(c);
}

namespace {

template <typename T>
AutocovSeq biased_acf(std::span<const T> u, int n) {
  if (n < 0 || u.size() <= static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::series_too_short,
                "sample_autocov: series length must exceed the lag count");
  }
  const double t = static_cast<double>(u.size());
  std::vector<cplx> r(n + 1);
  for (int k = 0; k <= n; ++k) {
    cplx acc{0.0};
    for (std::size_t l = static_cast<std::size_t>(k); l < u.size(); ++l) {
      acc += cplx(u[l]) * std::conj(cplx(u[l - k]));
    }
    r[k] = acc / t;
  }
  r[0] = r[0].real();
  return AutocovSeq::from(std::move(r));
}

}  // namespace

AutocovSeq sample_autocov(std::span<const double> series, int n) {
  return biased_acf(series, n);
}

AutocovSeq sample_autocov(std::span<const cplx> series, int n) {
  return biased_acf(series, n);
}

GridDensity with_spectral_line(const GridDensity& g, double theta0,
                               double mass) {
  if (!(mass >= 0.0) || !std::isfinite(theta0)) {
    throw Error(ErrorCode::invalid_argument,
                "spectral line: mass must be nonnegative");
  }
  const std::size_t n = g.n_grid();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double origin = g.theta(0);
  double pos = (theta0 - origin) / step;
  pos -= std::floor(pos / static_cast<double>(n)) * static_cast<double>(n);
  const auto lo = static_cast<std::size_t>(std::floor(pos)) % n;
  const double frac = pos - std::floor(pos);
  std::vector<double> v(g.values().begin(), g.values().end());
  // A grid value of x contributes x / n to R_0.
  v[lo] += (1.0 - frac) * mass * static_cast<double>(n);
  v[(lo + 1) % n] += frac * mass * static_cast<double>(n);
  return GridDensity(std::move(v), g.layout());
}

}  // namespace fracpole
