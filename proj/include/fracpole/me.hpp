#ifndef FRACPOLE_ME_HPP
#define FRACPOLE_ME_HPP

#include <vector>

#include "fracpole/filter_coeffs.hpp"
#include "fracpole/moments.hpp"

namespace fracpole {

/// Maximum-entropy density f(theta) = k2 / |1 + sum_k a_k e^{j k theta}|^2.
struct MeSpectrum {
  int n = 0;
  double k2 = 1.0;
  std::vector<cplx> a;

  /// Positive square root of k2.
  double gain() const;
};

/// Levinson fit; throws not_posdef.
MeSpectrum fit_me(const AutocovSeq& a);

double eval_me(const MeSpectrum& s, double theta);

/// Samples eval_me on the grid.
GridDensity sample_me(const MeSpectrum& s, std::size_t n_grid,
                      GridLayout layout = GridLayout::endpoint);

/// One-step-ahead predictor alpha_k = -a_k with error variance k2.
FilterCoeffs predictor(const MeSpectrum& s);

/// mean log f over the grid, the entropy integral the ME density maximizes
/// among consistent densities. Throws not_positive on a vanishing value.
double entropy_integral(const GridDensity& g);

}  // namespace fracpole

#endif  // FRACPOLE_ME_HPP
