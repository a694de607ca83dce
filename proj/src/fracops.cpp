#include "fracpainleve/fracops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/parallel.hpp"
#include "fracpainleve/specfun.hpp"

namespace fracpainleve::fracops {

void GridFunction::validate() const {
  if (grid.size() != values.size()) {
    throw DomainError("grid function: grid has " + std::to_string(grid.size()) +
                      " nodes but " + std::to_string(values.size()) + " values");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw DomainError("grid function: grid not strictly increasing at index " +
                        std::to_string(i));
    }
  }
}

std::vector<double> uniform_grid(double a, double b, std::size_t points) {
  if (points < 2 || !(b > a)) {
    throw DomainError("uniform_grid: need b > a and at least 2 points");
  }
  std::vector<double> grid(points);
  const double step = (b - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = a + step * static_cast<double>(i);
  grid.back() = b;
  return grid;
}

double uniform_step(std::span<const double> grid) {
  if (grid.size() < 2) return 0.0;
  const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-9 * step) return 0.0;
  }
  return step;
}

double caputo_power(const PowerTerm& term, double alpha, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("caputo_power: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(t > term.base_point)) {
    throw DomainError("caputo_power: t must exceed the base point");
  }
  const double g = term.exponent;
  if (g == 0.0) return 0.0;
  if (!(g > alpha - 1.0)) {
    throw DomainError("caputo_power: exponent must exceed alpha - 1, got " + std::to_string(g));
  }
  const specfun::GammaRatio ratio = specfun::gamma_ratio(g + 1.0, g - alpha + 1.0);
  if (ratio.kind == specfun::GammaRatio::Kind::indeterminate) {
    throw NumericalError("caputo_power: degenerate balance, both Gamma arguments are poles");
  }
  if (ratio.kind == specfun::GammaRatio::Kind::infinite) {
    throw NumericalError("caputo_power: Gamma(exponent + 1) is a pole");
  }
  return term.coefficient * ratio.value * std::pow(t - term.base_point, g - alpha);
}

UniformProductTrapezoid::UniformProductTrapezoid(double alpha, double step, std::size_t points)
    : points_(points), interior_(points, 0.0), first_(points, 0.0) {
  if (!(alpha > 0.0) || !(step > 0.0)) {
    throw DomainError("product trapezoid: alpha and step must be positive");
  }
  scale_ = std::pow(step, alpha) / specfun::gamma(alpha + 2.0).value();
  const double ap1 = alpha + 1.0;
  for (std::size_t m = 1; m < points; ++m) {
    const double md = static_cast<double>(m);
    interior_[m] = std::pow(md + 1.0, ap1) - 2.0 * std::pow(md, ap1) + std::pow(md - 1.0, ap1);
  }
  for (std::size_t n = 1; n < points; ++n) {
    const double nd = static_cast<double>(n);
    first_[n] = std::pow(nd - 1.0, ap1) - (nd - 1.0 - alpha) * std::pow(nd, alpha);
  }
}

double UniformProductTrapezoid::weight(std::size_t j, std::size_t n) const {
  if (n == 0) return 0.0;
  if (j == n) return scale_;
  if (j == 0) return scale_ * first_[n];
  return scale_ * interior_[n - j];
}

double UniformProductTrapezoid::apply(std::span<const double> values, std::size_t n) const {
  if (n == 0) return 0.0;
  double acc = first_[n] * values[0];
  for (std::size_t j = 1; j < n; ++j) acc += interior_[n - j] * values[j];
  acc += values[n];
  return scale_ * acc;
}

GridFunction rl_integral(const GridFunction& f, double alpha) {
  f.validate();
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("rl_integral: alpha must be positive");
  }
  if (f.grid.size() < 2) throw DomainError("rl_integral: grid needs at least 2 points");

  const std::size_t n_points = f.grid.size();
  GridFunction out{f.grid, std::vector<double>(n_points, 0.0)};

  if (const double step = uniform_step(f.grid); step > 0.0) {
    const UniformProductTrapezoid rule(alpha, step, n_points);
    parallel_for(n_points, [&](std::size_t begin, std::size_t end) {
      for (std::size_t n = std::max<std::size_t>(begin, 1); n < end; ++n) {
        out.values[n] = rule.apply(f.values, n);
      }
    });
    return out;
  }

  // General grid: exact kernel moments of the piecewise-linear interpolant.
  const double inv_gamma = 1.0 / specfun::gamma(alpha).value();
  parallel_for(n_points, [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = std::max<std::size_t>(begin, 1); n < end; ++n) {
      const double t = f.grid[n];
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double width = f.grid[j + 1] - f.grid[j];
        const double u0 = t - f.grid[j];
        const double u1 = t - f.grid[j + 1];
        const double m0 = (std::pow(u0, alpha) - std::pow(u1, alpha)) / alpha;
        const double m1 =
            u0 * m0 - (std::pow(u0, alpha + 1.0) - std::pow(u1, alpha + 1.0)) / (alpha + 1.0);
        acc += f.values[j] * (m0 - m1 / width) + f.values[j + 1] * (m1 / width);
      }
      out.values[n] = acc * inv_gamma;
    }
  });
  return out;
}

GridFunction caputo_l1(const GridFunction& f, double alpha) {
  f.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("caputo_l1: alpha must lie in (0, 1)");
  }
  if (f.grid.size() < 3) throw DomainError("caputo_l1: grid needs at least 3 points");
  const double step = uniform_step(f.grid);
  if (step <= 0.0) throw DomainError("caputo_l1: grid must be uniform");

  const std::size_t n_points = f.grid.size();
  std::vector<double> b(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double jd = static_cast<double>(j);
    b[j] = std::pow(jd + 1.0, 1.0 - alpha) - std::pow(jd, 1.0 - alpha);
  }
  const double scale = std::pow(step, -alpha) / specfun::gamma(2.0 - alpha).value();

  GridFunction out{f.grid, std::vector<double>(n_points, 0.0)};
  out.values[0] = std::numeric_limits<double>::quiet_NaN();
  parallel_for(n_points, [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = std::max<std::size_t>(begin, 1); n < end; ++n) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += b[j] * (f.values[n - j] - f.values[n - j - 1]);
      }
      out.values[n] = scale * acc;
    }
  });
  return out;
}

}  // namespace fracpainleve::fracops
