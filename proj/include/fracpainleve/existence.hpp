#pragma once

// Contraction certificates for D^alpha y = F(t, y), y(a) = y0, on [a, a+h].

#include <functional>
#include <optional>

namespace fracpainleve::existence {

using Rhs = std::function<double(double t, double y)>;
using Coefficient = std::function<double(double t)>;

struct IvpProblem {
  double alpha = 1.0;
  Rhs rhs;
  double a = 0.0;
  double b = 1.0;
  double y0 = 0.0;
  std::optional<double> lipschitz;
  double box_radius = 1.0;

  void validate() const;
};

struct CertifyOptions {
  double theta = 0.9;
  double sup_inflation = 1.05;
  double lipschitz_fd_inflation = 1.25;
};

struct ExistenceCertificate {
  /// Ball radius; empty on the linear path, where no ball is needed.
  std::optional<double> M;
  /// Inflated sup |F| over the box (empty on the linear path).
  std::optional<double> K;
  /// Raw sampled maximum before inflation.
  double K_sampled = 0.0;
  double L = 0.0;
  /// True when L came from finite differences rather than the caller.
  bool lipschitz_estimated = false;
  double h = 0.0;
  double k = 0.0;
  double alpha = 1.0;
  double a = 0.0;
  /// Maxima come from grid sampling, not rigorous suprema.
  bool sampled = true;
  /// Linear path: h < b - a, restarting on subintervals extends the solution.
  bool continuation_required = false;

  double interval_end() const { return a + h; }
  /// k / (1 - k); multiplies ||y1 - y0|| in the a-priori error estimate.
  double apriori_bound_factor() const { return k / (1.0 - k); }
};

ExistenceCertificate certify_nonlinear(const IvpProblem& problem, int sample_density,
                                       const CertifyOptions& options = {});

/// D^alpha y = p(t) y + f(t): the Lipschitz constant is sup |p|.
ExistenceCertificate certify_linear(double alpha, const Coefficient& p, double a, double b,
                                    int sample_density, const CertifyOptions& options = {});

/// k recomputed from the certificate fields.
double contraction_constant(const ExistenceCertificate& cert);

/// K h^alpha / Gamma(alpha + 1) recomputed from the certificate fields.
double self_map_radius(const ExistenceCertificate& cert);

}  // namespace fracpainleve::existence
