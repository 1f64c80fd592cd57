#ifndef FRACPOLE_FILTER_COEFFS_HPP
#define FRACPOLE_FILTER_COEFFS_HPP

#include <map>

#include "fracpole/trigpoly.hpp"

namespace fracpole {

enum class FilterKind { predictor, smoother };

/**
 * Linear estimator of u_0: sum over lags k of coeffs[k] u_{-k}.
 *
 * Predictors only carry lags k >= 1; smoothers carry lags k != 0. The
 * attached variance is the error variance of the estimate.
 */
struct FilterCoeffs {
  FilterKind kind = FilterKind::predictor;
  std::map<int, cplx> coeffs;
  double variance = 0.0;
};

}  // namespace fracpole

#endif  // FRACPOLE_FILTER_COEFFS_HPP
