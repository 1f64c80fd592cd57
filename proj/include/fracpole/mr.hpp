#ifndef FRACPOLE_MR_HPP
#define FRACPOLE_MR_HPP

#include <Eigen/Dense>

#include <vector>

#include "fracpole/error.hpp"
#include "fracpole/moments.hpp"

namespace fracpole {

/**
 * Lagrange vector lambda_0..lambda_n with the implicit mirror
 * lambda_{-k} = conj(lambda_k). It defines the positive trigonometric
 * polynomial
 *
 *     (lambda G)(theta) = sum_{k=-n}^{n} lambda_k e^{-j k theta}
 *                       = lambda_0 + 2 sum_k (Re lambda_k cos k theta
 *                                            + Im lambda_k sin k theta).
 *
 * Real coordinates are ordered (lambda_0, Re lambda_1, Im lambda_1, ...).
 */
class LagrangeVector {
 public:
  LagrangeVector() : values_{cplx{1.0}} {}
  explicit LagrangeVector(std::vector<cplx> values);

  /// lambda_0 = 1, all other entries zero, so that lambda G == 1.
  static LagrangeVector unit_center(int n);
  static LagrangeVector from_coords(const Eigen::VectorXd& x);

  int n() const noexcept { return static_cast<int>(values_.size()) - 1; }
  std::span<const cplx> values() const noexcept { return values_; }
  Eigen::VectorXd coords() const;

  /// lambda G as a trigonometric polynomial in e^{+j k theta}.
  TrigPoly poly() const;

 private:
  std::vector<cplx> values_;
};

/// min over the grid of lambda G; positive iff lambda is in the open cone
/// at grid resolution.
double min_lambda_g(const LagrangeVector& lambda, std::size_t n_grid);

/// H(lambda): moments R_{-n}..R_n of 1 / sqrt(lambda G). Throws not_in_cone.
MomentVector moment_map(const LagrangeVector& lambda, std::size_t n_grid);

/// target - H(lambda). Throws not_in_cone.
MomentVector residual(const LagrangeVector& lambda, const MomentVector& target,
                      std::size_t n_grid);

/// Moments in the real coordinates paired with lambda's coordinates:
/// (R_0, 2 Re R_1, -2 Im R_1, ...), i.e. mean of Gbar f.
Eigen::VectorXd moment_coords(const MomentVector& m);

/// moment_coords(moment_map(lambda)).
Eigen::VectorXd moment_map_coords(const LagrangeVector& lambda,
                                  std::size_t n_grid);

/**
 * Derivative of moment_map_coords with respect to lambda's real coordinates:
 *
 *     M = -1/2 mean( Gbar Gbar^T (lambda G)^{-3/2} ),
 *
 * with Gbar = (1, 2 cos theta, 2 sin theta, ...). Symmetric negative
 * definite inside the cone. Throws not_in_cone.
 */
Eigen::MatrixXd jacobian(const LagrangeVector& lambda, std::size_t n_grid);

struct MrOptions {
  double tol = 1e-8;  ///< relative infinity-norm residual
  std::size_t n_grid = default_grid;
  int max_iterations = 200;
  std::size_t max_grid = std::size_t{1} << 20;
  bool refine_grid = true;
};

struct MrDiagnostics {
  int iterations = 0;
  std::vector<double> residual_history;  ///< relative residual per iterate
  std::vector<double> step_history;      ///< accepted step lengths
  double residual_inf = 0.0;             ///< absolute, at the last iterate
  double relative_residual = 0.0;
  double min_lambda_g = 0.0;
  std::size_t n_grid = 0;  ///< grid in use at exit
  int refinements = 0;
};

/// f(theta) = 1 / sqrt(lambda G) = k2 / sqrt(b) = kappa2 / |monic factor|.
struct MrSpectrum {
  int n = 0;
  LagrangeVector lambda;
  double k2 = 1.0;  ///< 1 / mean sqrt(lambda G)
  TrigPoly b;       ///< k2^2 lambda G, normalised so mean sqrt(b) = 1
  std::vector<cplx> factor;  ///< monic factor of lambda G, roots outside disc
  double kappa2 = 1.0;       ///< gain^{-1/2} of that factorization

  double kappa() const;
};

struct MrSolution {
  MrSpectrum spectrum;
  MrDiagnostics diagnostics;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, MrDiagnostics diagnostics)
      : Error(ErrorCode::no_convergence, what),
        diagnostics_(std::move(diagnostics)) {}
  const MrDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  MrDiagnostics diagnostics_;
};

/**
 * Most-random spectrum consistent with a positive definite sequence.
 *
 * Damped Newton iteration on H(lambda) = R starting from the unit center,
 * which follows the continuous Newton flow of the homotopy. Every accepted
 * step stays strictly inside the cone on the grid and reduces the residual.
 * For real input only the cosine coordinates are updated.
 *
 * Throws not_posdef, NoConvergence, or invalid_argument for tol outside
 * (0, 1e-2].
 */
MrSolution solve_mr(const AutocovSeq& a, const MrOptions& options = {});

/// Derived quantities (k2, b, factorization) for a lambda in the cone.
MrSpectrum make_mr_spectrum(const LagrangeVector& lambda, std::size_t n_grid);

double eval_mr(const MrSpectrum& s, double theta);

GridDensity sample_mr(const MrSpectrum& s, std::size_t n_grid,
                      GridLayout layout = GridLayout::endpoint);

struct HomotopyPath {
  std::vector<double> tau;
  std::vector<LagrangeVector> lambda;
};

/**
 * Integrates d lambda / d tau = M(lambda)^{-1} (R - R_start) over [0, 1] with
 * classical RK4, where R_start = H(unit center). Diagnostic route to the
 * same fixed point as solve_mr. Throws not_in_cone if a stage leaves the cone.
 */
HomotopyPath trace_homotopy(const AutocovSeq& a, int steps = 1024,
                            std::size_t n_grid = default_grid);

}  // namespace fracpole

#endif  // FRACPOLE_MR_HPP
