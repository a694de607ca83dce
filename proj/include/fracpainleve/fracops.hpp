#pragma once

// Fractional operators: the exact Caputo power rule, the Riemann-Liouville
// integral by product-trapezoidal quadrature, and the L1 Caputo scheme.

#include <cstddef>
#include <span>
#include <vector>

namespace fracpainleve::fracops {

/// coefficient * (t - base_point)^exponent
struct PowerTerm {
  double coefficient = 1.0;
  double exponent = 0.0;
  double base_point = 0.0;
};

/// Samples of a function on a strictly increasing grid.
struct GridFunction {
  std::vector<double> grid;
  std::vector<double> values;

  /// Throws DomainError unless sizes match and the grid is strictly increasing.
  void validate() const;
};

/// points equally spaced nodes from a to b inclusive.
std::vector<double> uniform_grid(double a, double b, std::size_t points);

/// Spacing if the grid is uniform to a relative 1e-9, otherwise 0.
double uniform_step(std::span<const double> grid);

/// Caputo derivative of order alpha of a power term:
///   D^alpha c (t - t0)^g = c Gamma(g + 1) / Gamma(g - alpha + 1) (t - t0)^(g - alpha).
/// The constant case g = 0 returns exactly 0. Requires 0 < alpha <= 1,
/// t > base_point, and g > alpha - 1 or g = 0.
double caputo_power(const PowerTerm& term, double alpha, double t);

/// I^alpha f on the same grid; the first value is 0.
GridFunction rl_integral(const GridFunction& f, double alpha);

/// L1 Caputo derivative on a uniform grid. values[0] is NaN (undefined at the
/// base point); every other node carries the discrete derivative.
GridFunction caputo_l1(const GridFunction& f, double alpha);

/// Product-trapezoidal weights for I^alpha on a uniform grid of given step.
///
/// (I^alpha g)(t_n) ~= sum_{j=0..n} weight(j, n) g_j, which integrates the
/// piecewise-linear interpolant of g exactly against (t_n - s)^(alpha-1)/Gamma(alpha).
class UniformProductTrapezoid {
 public:
  UniformProductTrapezoid(double alpha, double step, std::size_t points);

  double weight(std::size_t j, std::size_t n) const;

  /// sum_{j<=n} weight(j, n) values[j], accumulated in index order.
  double apply(std::span<const double> values, std::size_t n) const;

  std::size_t size() const { return points_; }

 private:
  std::size_t points_;
  double scale_;                 // step^alpha / Gamma(alpha + 2)
  std::vector<double> interior_; // interior_[m] for lag m = n - j >= 1
  std::vector<double> first_;    // first_[n] = weight of g_0 at node n
};

}  // namespace fracpainleve::fracops
