#include "fracpole/me.hpp"

#include <cmath>

#include "fracpole/detail/summation.hpp"
#include "fracpole/error.hpp"

namespace fracpole {

double MeSpectrum::gain() const { return std::sqrt(k2); }

MeSpectrum fit_me(const AutocovSeq& a) {
  auto lev = levinson(a);
  return {a.n(), lev.variance, std::move(lev.a)};
}

double eval_me(const MeSpectrum& s, double theta) {
  return s.k2 / std::norm(eval_monic(s.a, theta));
}

GridDensity sample_me(const MeSpectrum& s, std::size_t n_grid,
                      GridLayout layout) {
  std::vector<double> v(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    v[i] = eval_me(s, GridDensity::grid_theta(i, n_grid, layout));
  }
  return GridDensity(std::move(v), layout);
}

FilterCoeffs predictor(const MeSpectrum& s) {
  FilterCoeffs f;
  f.kind = FilterKind::predictor;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    f.coeffs[static_cast<int>(k) + 1] = -s.a[k];
  }
  f.variance = s.k2;
  return f;
}

double entropy_integral(const GridDensity& g) {
  std::vector<double> logs(g.n_grid());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double v = g.values()[i];
    if (!(v > 0.0)) {
      throw Error(ErrorCode::not_positive,
                  "entropy_integral: density vanishes on the grid");
    }
    logs[i] = std::log(v);
  }
  return detail::mean<double>(logs);
}

}  // namespace fracpole
