#include "fracpole/benchmark.hpp"

#include <cmath>

namespace fracpole::benchmark {

AutocovSeq moments() {
  const std::array<double, 4> r{3.0000, 2.1552, 1.0806, 0.1415};
  return AutocovSeq::from_real(r);
}

AutocovSeq exact_autocov(int n) {
  std::vector<cplx> r(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double ma = k == 0 ? 1.0 : (k == 1 ? 0.4 : 0.0);
    r[k] = ma + 2.0 * std::cos(0.5 * k);
  }
  return AutocovSeq::from(std::move(r));
}

GridDensity truth_density(std::size_t n_grid) {
  std::vector<double> v(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    v[i] = 1.0 + 0.8 * std::cos(GridDensity::grid_theta(i, n_grid, GridLayout::endpoint));
  }
  GridDensity g(std::move(v));
  g = with_spectral_line(g, 0.5, 1.0);
  return with_spectral_line(g, -0.5, 1.0);
}

}  // namespace fracpole::benchmark
