#include "fracpainleve/existence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/specfun.hpp"

namespace fracpainleve::existence {

namespace {

double node(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double gamma_alpha_plus_one(double alpha) { return specfun::gamma(alpha + 1.0).value(); }

// Shrinks h until k < 1 and K h^alpha / Gamma(alpha + 1) <= M hold exactly in
// floating point; pow rounding can otherwise overshoot by an ulp.
void enforce_invariants(ExistenceCertificate& cert) {
  for (int i = 0; i < 64; ++i) {
    const double k = contraction_constant(cert);
    const bool contraction_ok = k < 1.0;
    const bool ball_ok = !cert.M || !cert.K || self_map_radius(cert) <= *cert.M;
    if (contraction_ok && ball_ok) {
      cert.k = k;
      return;
    }
    cert.h *= 1.0 - 1e-15 * (1 << std::min(i, 20));
  }
  throw NumericalError("certificate: could not satisfy the contraction inequalities");
}

}  // namespace

void IvpProblem::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InputError("interval must satisfy a < b");
  }
  if (!std::isfinite(y0)) throw InputError("y0 must be finite");
  if (!(box_radius > 0.0) || !std::isfinite(box_radius)) {
    throw InputError("box_radius must be positive");
  }
  if (lipschitz && (!(*lipschitz >= 0.0) || !std::isfinite(*lipschitz))) {
    throw InputError("lipschitz must be finite and non-negative");
  }
  if (!rhs) throw InputError("rhs is not set");
}

double contraction_constant(const ExistenceCertificate& cert) {
  return cert.L * std::pow(cert.h, cert.alpha) / gamma_alpha_plus_one(cert.alpha);
}

double self_map_radius(const ExistenceCertificate& cert) {
  return cert.K.value_or(0.0) * std::pow(cert.h, cert.alpha) / gamma_alpha_plus_one(cert.alpha);
}

ExistenceCertificate certify_nonlinear(const IvpProblem& problem, int sample_density,
                                       const CertifyOptions& options) {
  problem.validate();
  if (sample_density < 2) throw InputError("sample_density must be >= 2");

  const double y_lo = problem.y0 - problem.box_radius;
  const double y_hi = problem.y0 + problem.box_radius;

  double k_sampled = 0.0;
  double l_sampled = 0.0;
  for (int i = 0; i < sample_density; ++i) {
    const double t = node(problem.a, problem.b, i, sample_density);
    for (int j = 0; j < sample_density; ++j) {
      const double y = node(y_lo, y_hi, j, sample_density);
      const double f = problem.rhs(t, y);
      if (!std::isfinite(f)) {
        throw DomainError("rhs is not finite at (t, y) = (" + std::to_string(t) + ", " +
                          std::to_string(y) + ")");
      }
      k_sampled = std::max(k_sampled, std::abs(f));
      if (!problem.lipschitz) {
        const double d = 1e-5 * std::max(1.0, std::abs(y));
        const double slope = (problem.rhs(t, y + d) - problem.rhs(t, y - d)) / (2.0 * d);
        if (!std::isfinite(slope)) {
          throw DomainError("rhs derivative is not finite at t = " + std::to_string(t));
        }
        l_sampled = std::max(l_sampled, std::abs(slope));
      }
    }
  }

  ExistenceCertificate cert;
  cert.alpha = problem.alpha;
  cert.a = problem.a;
  cert.M = problem.box_radius;
  cert.K_sampled = k_sampled;
  cert.K = k_sampled * options.sup_inflation;
  if (problem.lipschitz) {
    cert.L = *problem.lipschitz;
  } else {
    cert.L = l_sampled * options.lipschitz_fd_inflation;
    cert.lipschitz_estimated = true;
  }

  const double g1 = gamma_alpha_plus_one(problem.alpha);
  const double inv_alpha = 1.0 / problem.alpha;
  double h = problem.b - problem.a;
  if (*cert.K > 0.0) h = std::min(h, std::pow(problem.box_radius * g1 / *cert.K, inv_alpha));
  if (cert.L > 0.0) h = std::min(h, std::pow(options.theta * g1 / cert.L, inv_alpha));
  cert.h = h;
  enforce_invariants(cert);
  return cert;
}

ExistenceCertificate certify_linear(double alpha, const Coefficient& p, double a, double b,
                                    int sample_density, const CertifyOptions& options) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");
  if (!(a < b)) throw InputError("interval must satisfy a < b");
  if (sample_density < 2) throw InputError("sample_density must be >= 2");
  if (!p) throw InputError("coefficient p is not set");

  double sup = 0.0;
  for (int i = 0; i < sample_density; ++i) {
    const double t = node(a, b, i, sample_density);
    const double v = p(t);
    if (!std::isfinite(v)) {
      throw DomainError("coefficient p is not finite at t = " + std::to_string(t));
    }
    sup = std::max(sup, std::abs(v));
  }

  ExistenceCertificate cert;
  cert.alpha = alpha;
  cert.a = a;
  cert.K_sampled = sup;
  cert.L = sup * options.sup_inflation;
  const double g1 = gamma_alpha_plus_one(alpha);
  const double full = cert.L * std::pow(b - a, alpha) / g1;
  if (full < 1.0) {
    cert.h = b - a;
  } else {
    cert.h = std::pow(options.theta * g1 / cert.L, 1.0 / alpha);
    cert.continuation_required = true;
  }
  enforce_invariants(cert);
  return cert;
}

}  // namespace fracpainleve::existence
