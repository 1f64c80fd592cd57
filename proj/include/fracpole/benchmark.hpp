#ifndef FRACPOLE_BENCHMARK_HPP
#define FRACPOLE_BENCHMARK_HPP

#include <array>

#include "fracpole/moments.hpp"

/// The "MA(1) plus sinusoid" benchmark: u_k = w_k + w_{k-1}/2 + 2 sin(k/2 + phi).
namespace fracpole::benchmark {

/// R_0..R_3 to four decimals, as tabulated for the benchmark.
AutocovSeq moments();

/// Exact R_0..R_n: (1, 0.4, 0, ...) from the MA part plus 2 cos(k/2).
AutocovSeq exact_autocov(int n);

/// 1 + 0.8 cos(theta) plus unit-mass lines at +-1/2 on the grid.
GridDensity truth_density(std::size_t n_grid);

/// Tabulated reference values for the fitted spectra.
struct Reference {
  std::array<double, 3> me_a{-0.9026, 0.1829, 0.1465};
  double me_k = 1.2732;
  std::array<double, 4> mr_lambda{3.4942, -2.5690, 0.9598, -0.1231};
  std::array<double, 3> mr_ahat{-1.7673, 1.1795, -0.1956};
  double mr_kappa = 1.2732;
};

inline constexpr double reference_tolerance = 5e-4;

}  // namespace fracpole::benchmark

#endif  // FRACPOLE_BENCHMARK_HPP
