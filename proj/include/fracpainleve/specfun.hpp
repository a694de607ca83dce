#pragma once

// Real-argument Gamma machinery and the two-parameter Mittag-Leffler function.

namespace fracpainleve::specfun {

/// Half-width of the band around non-positive integers treated as a Gamma pole.
inline constexpr double kPoleTolerance = 1e-9;

/// Largest |z| accepted by mittag_leffler.
inline constexpr double kMittagLefflerMaxAbsZ = 10.0;

/// Gamma(x) in signed-log form: Gamma(x) = sign * exp(log_magnitude) unless is_pole.
struct GammaValue {
  double log_magnitude = 0.0;
  int sign = 1;
  bool is_pole = false;

  /// Plain value; +-inf overflow is possible for large x. NaN for poles.
  double value() const;
};

/// True when x lies within kPoleTolerance of a non-positive integer.
bool is_gamma_pole(double x);

GammaValue gamma(double x);

/// Result of Gamma(num)/Gamma(den).
struct GammaRatio {
  enum class Kind {
    finite,        ///< value holds the ratio (0 when only den is a pole)
    infinite,      ///< num is a pole, den is not
    indeterminate  ///< both are poles; a limit is required
  };
  Kind kind = Kind::finite;
  double value = 0.0;

  bool is_finite() const { return kind == Kind::finite; }
};

GammaRatio gamma_ratio(double num, double den);

/// Gamma(num)/Gamma(den) with the removable both-pole case resolved by taking
/// the limit along num - den = const:
///   Gamma(-j + e) / Gamma(-i + e) -> (-1)^(j-i) i! / j!   as e -> 0.
/// When num - den is an integer the ratio is evaluated as a rising factorial,
/// which is exact across poles. The infinite case is still reported.
GammaRatio gamma_ratio_limit(double num, double den);

struct MittagLefflerParams {
  double alpha = 1.0;
  double beta = 1.0;
};

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) by direct summation.
///
/// Throws InputError for alpha <= 0, RangeError when |z| > kMittagLefflerMaxAbsZ
/// or when the alternating series would lose more accuracy than the target
/// (absolute 1e-8 for |E| <= 1, relative otherwise).
double mittag_leffler(const MittagLefflerParams& params, double z);

}  // namespace fracpainleve::specfun
