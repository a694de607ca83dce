#include "fracpainleve/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracpainleve/fracops.hpp"
#include "fracpainleve/parallel.hpp"
#include "fracpainleve/specfun.hpp"

namespace fracpainleve::solvers {

namespace {

double sup_distance(std::span<const double> x, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

// Past the singularity the scheme keeps producing finite values for a few
// steps while |y| grows faster than the grid can follow. Drop the points where
// a single step more than doubled |y|; those no longer approximate anything.
void trim_unresolved_tail(SolutionTrajectory& out) {
  constexpr double kMaxStepGrowth = 2.0;
  while (out.values.size() > 1) {
    const double last = std::abs(out.values.back());
    const double prev = std::abs(out.values[out.values.size() - 2]);
    if (last <= 1.0 || last <= kMaxStepGrowth * prev) break;
    out.values.pop_back();
    out.grid.pop_back();
  }
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::picard: return "picard";
    case Method::mittag_leffler: return "ml";
    case Method::abm: return "abm";
  }
  return "unknown";
}

SolutionTrajectory picard_solve(const existence::IvpProblem& problem,
                                const existence::ExistenceCertificate& cert, int grid_points,
                                double tol, int max_iter) {
  problem.validate();
  if (grid_points < 16) throw InputError("picard_solve: grid_points must be >= 16");
  if (!(tol > 0.0)) throw InputError("picard_solve: tol must be positive");
  if (max_iter < 1) throw InputError("picard_solve: max_iter must be >= 1");
  if (!(cert.k < 1.0) || !(cert.h > 0.0) || cert.alpha != problem.alpha || cert.a != problem.a) {
    throw InputError("picard_solve: certificate does not belong to this problem");
  }

  const std::size_t n = static_cast<std::size_t>(grid_points);
  SolutionTrajectory out;
  out.method = Method::picard;
  out.grid = fracops::uniform_grid(cert.a, cert.interval_end(), n);
  const double step = (out.grid.back() - out.grid.front()) / static_cast<double>(n - 1);
  const fracops::UniformProductTrapezoid rule(problem.alpha, step, n);

  std::vector<double> current(n, problem.y0);
  std::vector<double> next(n);
  std::vector<double> field(n);
  double first_distance = 0.0;

  for (int iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      field[j] = problem.rhs(out.grid[j], current[j]);
      if (!std::isfinite(field[j])) {
        throw NumericalError("picard_solve: rhs not finite at t = " + std::to_string(out.grid[j]));
      }
    }
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) next[i] = problem.y0 + rule.apply(field, i);
    });

    if (cert.M) {
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(next[i] - problem.y0) > *cert.M * (1.0 + 1e-12)) {
          throw CertificateViolation("picard_solve: iterate " + std::to_string(iter) +
                                     " left the certified box at t = " +
                                     std::to_string(out.grid[i]));
        }
      }
    }

    const double distance = sup_distance(next, current);
    out.differences.push_back(distance);
    if (iter == 1) first_distance = distance;
    current.swap(next);

    if (distance < tol) {
      out.values = current;
      out.iterations = iter;
      out.error_bound = std::pow(cert.k, iter) / (1.0 - cert.k) * first_distance;
      return out;
    }
  }
  throw NonConvergenceError("picard_solve: no convergence after " + std::to_string(max_iter) +
                                " iterations, last difference " +
                                std::to_string(out.differences.back()),
                            out.differences.back());
}

SolutionTrajectory solve_linear_ml(double alpha, double lambda,
                                   const std::function<double(double)>& forcing, double y0,
                                   std::span<const double> grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("solve_linear_ml: alpha must lie in (0, 1]");
  if (grid.size() < 2) throw DomainError("solve_linear_ml: grid needs at least 2 points");
  const double step = fracops::uniform_step(grid);
  if (step <= 0.0) throw DomainError("solve_linear_ml: grid must be uniform");

  const std::size_t n = grid.size();
  const double a = grid.front();
  SolutionTrajectory out;
  out.method = Method::mittag_leffler;
  out.grid.assign(grid.begin(), grid.end());
  out.values.resize(n);

  const specfun::MittagLefflerParams homogeneous{alpha, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double z = -lambda * std::pow(grid[i] - a, alpha);
    out.values[i] = y0 * specfun::mittag_leffler(homogeneous, z);
  }
  if (!forcing) return out;

  // Product integration of K(u) = u^(alpha-1) E_{alpha,alpha}(-lambda u^alpha)
  // against piecewise-linear f, exact up to Mittag-Leffler accuracy. Primitives:
  //   P(u) = int_0^u K = u^alpha E_{alpha,alpha+1}(-lambda u^alpha)
  //   Q(u) = int_0^u P = u^(alpha+1) E_{alpha,alpha+2}(-lambda u^alpha)
  // so int u K du = u P(u) - Q(u).
  std::vector<double> prim(n);
  std::vector<double> prim2(n);
  const specfun::MittagLefflerParams p_params{alpha, alpha + 1.0};
  const specfun::MittagLefflerParams q_params{alpha, alpha + 2.0};
  for (std::size_t m = 0; m < n; ++m) {
    const double u = static_cast<double>(m) * step;
    const double ua = std::pow(u, alpha);
    prim[m] = ua * specfun::mittag_leffler(p_params, -lambda * ua);
    prim2[m] = u * ua * specfun::mittag_leffler(q_params, -lambda * ua);
  }
  // On the lag cell [(m-1) step, m step]: left[m] multiplies f at lag m,
  // right[m] multiplies f at lag m-1.
  std::vector<double> left(n, 0.0);
  std::vector<double> right(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    const double lo = static_cast<double>(m - 1) * step;
    const double hi = static_cast<double>(m) * step;
    const double i0 = prim[m] - prim[m - 1];
    const double i1 = (hi * prim[m] - prim2[m]) - (lo * prim[m - 1] - prim2[m - 1]);
    left[m] = (i1 - lo * i0) / step;
    right[m] = (hi * i0 - i1) / step;
  }

  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = forcing(grid[j]);

  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = std::max<std::size_t>(begin, 1); i < end; ++i) {
      double acc = right[1] * f[i];
      for (std::size_t lag = 1; lag < i; ++lag) acc += (left[lag] + right[lag + 1]) * f[i - lag];
      acc += left[i] * f[0];
      out.values[i] += acc;
    }
  });
  return out;
}

SolutionTrajectory abm_solve(const existence::IvpProblem& problem, int grid_points) {
  problem.validate();
  if (grid_points < 16) throw InputError("abm_solve: grid_points must be >= 16");

  const std::size_t n = static_cast<std::size_t>(grid_points);
  const std::vector<double> grid = fracops::uniform_grid(problem.a, problem.b, n);
  const double step = (problem.b - problem.a) / static_cast<double>(n - 1);
  const double alpha = problem.alpha;
  const fracops::UniformProductTrapezoid corrector(alpha, step, n);

  // Product-rectangle predictor weights by lag: (m+1)^alpha - m^alpha.
  std::vector<double> rect(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double md = static_cast<double>(m);
    rect[m] = std::pow(md + 1.0, alpha) - std::pow(md, alpha);
  }
  const double rect_scale = std::pow(step, alpha) / specfun::gamma(alpha + 1.0).value();

  SolutionTrajectory out;
  out.method = Method::abm;
  out.grid.reserve(n);
  out.values.reserve(n);
  std::vector<double> field;
  field.reserve(n);

  const double f0 = problem.rhs(grid[0], problem.y0);
  if (!std::isfinite(f0)) throw DomainError("abm_solve: rhs not finite at the initial point");
  out.grid.push_back(grid[0]);
  out.values.push_back(problem.y0);
  field.push_back(f0);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    double predictor = 0.0;
    for (std::size_t j = 0; j <= k; ++j) predictor += rect[k - j] * field[j];
    predictor = problem.y0 + rect_scale * predictor;

    double history = 0.0;
    for (std::size_t j = 0; j <= k; ++j) history += corrector.weight(j, k + 1) * field[j];
    const double f_pred = problem.rhs(grid[k + 1], predictor);
    const double y_next = problem.y0 + history + corrector.weight(k + 1, k + 1) * f_pred;
    const double f_next = std::isfinite(y_next) ? problem.rhs(grid[k + 1], y_next) : y_next;

    if (!std::isfinite(predictor) || !std::isfinite(f_pred) || !std::isfinite(y_next) ||
        !std::isfinite(f_next) || std::abs(y_next) > kBlowUpThreshold) {
      trim_unresolved_tail(out);
      out.blow_up = true;
      out.last_valid_time = out.grid.back();
      return out;
    }
    out.grid.push_back(grid[k + 1]);
    out.values.push_back(y_next);
    field.push_back(f_next);
  }
  return out;
}

}  // namespace fracpainleve::solvers
