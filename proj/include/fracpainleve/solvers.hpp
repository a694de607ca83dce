#pragma once

// Three routes to the solution of D^alpha y = F(t, y), y(a) = y0:
// certified Picard iteration on the Volterra form, the Mittag-Leffler closed
// form for D^alpha y + lambda y = f(t), and a fractional Adams-Bashforth-Moulton
// predictor-corrector used as an independent oracle.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/existence.hpp"

namespace fracpainleve::solvers {

enum class Method { picard, mittag_leffler, abm };

const char* to_string(Method m);

/// Magnitude beyond which abm_solve declares blow-up.
inline constexpr double kBlowUpThreshold = 1e12;

struct SolutionTrajectory {
  std::vector<double> grid;
  std::vector<double> values;
  Method method = Method::abm;
  /// Picard only: k^n / (1 - k) * ||y1 - y0||, the exact-operator a-priori bound.
  std::optional<double> error_bound;
  std::optional<int> iterations;
  /// Picard only: sup-norm distance between successive iterates.
  std::vector<double> differences;
  /// abm only: |y| exceeded kBlowUpThreshold. The trajectory then ends at the
  /// last point reached by a step that did not more than double |y|.
  bool blow_up = false;
  std::optional<double> last_valid_time;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, double last_difference)
      : NumericalError(what), last_difference_(last_difference) {}
  double last_difference() const { return last_difference_; }

 private:
  double last_difference_;
};

/// An iterate left the certified box [y0 - M, y0 + M].
class CertificateViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fixed-point iteration y_{n+1} = y0 + I^alpha F(., y_n) on the certified
/// interval [a, a + h], with I^alpha discretized by the product-trapezoidal rule.
SolutionTrajectory picard_solve(const existence::IvpProblem& problem,
                                const existence::ExistenceCertificate& cert, int grid_points,
                                double tol, int max_iter);

/// y(t) = y0 E_alpha(-lambda (t-a)^alpha)
///      + int_a^t (t-s)^(alpha-1) E_{alpha,alpha}(-lambda (t-s)^alpha) f(s) ds
/// on a uniform grid. The convolution is integrated exactly for piecewise-linear
/// f. An empty forcing means f = 0 and skips the quadrature.
SolutionTrajectory solve_linear_ml(double alpha, double lambda,
                                   const std::function<double(double)>& forcing, double y0,
                                   std::span<const double> grid);

SolutionTrajectory abm_solve(const existence::IvpProblem& problem, int grid_points);

}  // namespace fracpainleve::solvers
