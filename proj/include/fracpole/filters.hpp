#ifndef FRACPOLE_FILTERS_HPP
#define FRACPOLE_FILTERS_HPP

#include "fracpole/filter_coeffs.hpp"
#include "fracpole/moments.hpp"

namespace fracpole {

/// (mean 1/f)^{-1}; returns 0 if any value is <= 1e-300. Under grid
/// refinement this decays toward 0 when 1/f is not integrable.
double harmonic_mean(const GridDensity& g);

/// exp(mean log f); returns 0 if any value is <= 1e-300.
double geometric_mean(const GridDensity& g);

/// mean 1/f, the functional minimized by the most-random density.
/// Throws not_positive if some value is <= 1e-300.
double inverse_integral(const GridDensity& g);

/**
 * Optimal two-sided smoother of a density with integrable inverse.
 *
 * The error filter is alpha_0 = f^{-1} / mean f^{-1}; with rho_k its Fourier
 * coefficients (rho_0 = 1) the smoother is beta_k = -rho_k for
 * 0 < |k| <= max_lag and its error variance is the harmonic mean of f.
 * Throws not_positive.
 */
FilterCoeffs optimal_smoother(const GridDensity& g, int max_lag);

/**
 * Least-squares smoother restricted to lags 0 < |k| <= window, from the
 * autocorrelations R_0..R_{2 window}. Throws singular_system when the
 * normal equations cannot be factored, invalid_argument when the sequence
 * is too short.
 */
FilterCoeffs finite_window_smoother(const AutocovSeq& a, int window);

/// Same, with R_0..R_{2 window} taken from the density by grid quadrature.
FilterCoeffs finite_window_smoother(const GridDensity& g, int window);

/// E|u_0 - sum_k coeffs[k] u_{-k}|^2 under the autocorrelation sequence; all
/// lag differences must be within a.n().
double filter_error_variance(const AutocovSeq& a, const FilterCoeffs& f);

/// det R_n / det R_{n-1}; throws not_posdef.
double prediction_variance(const AutocovSeq& a);

}  // namespace fracpole

#endif  // FRACPOLE_FILTERS_HPP
