#include "fracpainleve/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracpainleve/errors.hpp"

namespace fracpainleve::specfun {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(x) for x >= 0.5.
double lanczos_log_gamma(double x) {
  x -= 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t +
         std::log(series);
}

// sin(pi x) with the argument reduced to [-1/2, 1/2] first, so that the
// result stays accurate close to integers.
double sin_pi(double x) {
  const double n = std::round(x);
  const double f = x - n;
  const double s = std::sin(std::numbers::pi * f);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

constexpr int kMaxRisingFactorial = 64;

// Gamma(den + n) / Gamma(den) for integer n, as a finite product.
double rising_ratio(double den, int n) {
  double prod = 1.0;
  if (n >= 0) {
    for (int i = 0; i < n; ++i) prod *= den + i;
    return prod;
  }
  const double num = den + n;
  for (int i = 0; i < -n; ++i) prod *= num + i;
  return 1.0 / prod;
}

}  // namespace

double GammaValue::value() const {
  if (is_pole) return std::numeric_limits<double>::quiet_NaN();
  return sign * std::exp(log_magnitude);
}

bool is_gamma_pole(double x) {
  const double n = std::round(x);
  return n <= 0.0 && std::abs(x - n) < kPoleTolerance;
}

GammaValue gamma(double x) {
  GammaValue out;
  if (is_gamma_pole(x)) {
    out.is_pole = true;
    out.log_magnitude = std::numeric_limits<double>::infinity();
    return out;
  }
  if (x >= 1.0 && x <= 23.0 && x == std::floor(x)) {
    // (x - 1)! is exact in double up to 22!.
    double fact = 1.0;
    for (double i = 2.0; i < x; i += 1.0) fact *= i;
    out.log_magnitude = std::log(fact);
    return out;
  }
  if (x >= 0.5) {
    out.log_magnitude = lanczos_log_gamma(x);
    return out;
  }
  // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
  const double s = sin_pi(x);
  out.sign = s < 0.0 ? -1 : 1;
  out.log_magnitude =
      std::log(std::numbers::pi) - std::log(std::abs(s)) - lanczos_log_gamma(1.0 - x);
  return out;
}

GammaRatio gamma_ratio(double num, double den) {
  const GammaValue gn = gamma(num);
  const GammaValue gd = gamma(den);
  if (gn.is_pole && gd.is_pole) return {GammaRatio::Kind::indeterminate, 0.0};
  if (gn.is_pole) return {GammaRatio::Kind::infinite, 0.0};
  if (gd.is_pole) return {GammaRatio::Kind::finite, 0.0};
  const double mag = std::exp(gn.log_magnitude - gd.log_magnitude);
  return {GammaRatio::Kind::finite, gn.sign * gd.sign * mag};
}

GammaRatio gamma_ratio_limit(double num, double den) {
  const bool pn = is_gamma_pole(num);
  const bool pd = is_gamma_pole(den);
  if (pn && !pd) return {GammaRatio::Kind::infinite, 0.0};
  if (pd && !pn) return {GammaRatio::Kind::finite, 0.0};

  const double diff = num - den;
  const double n = std::round(diff);
  if (std::abs(diff - n) <= 1e-12 * std::max(1.0, std::abs(diff)) &&
      std::abs(n) <= kMaxRisingFactorial) {
    if (pn && pd) {
      // Snap onto the integers so the product reproduces the exact limit.
      return {GammaRatio::Kind::finite, rising_ratio(std::round(den), static_cast<int>(n))};
    }
    return {GammaRatio::Kind::finite, rising_ratio(den, static_cast<int>(n))};
  }
  if (pn && pd) {
    // Both poles with a large integer gap: (-1)^(j-i) i!/j! in log form.
    const double j = -std::round(num);
    const double i = -std::round(den);
    const double lg = std::lgamma(i + 1.0) - std::lgamma(j + 1.0);
    const double sign = std::fmod(std::abs(j - i), 2.0) == 0.0 ? 1.0 : -1.0;
    return {GammaRatio::Kind::finite, sign * std::exp(lg)};
  }
  return gamma_ratio(num, den);
}

double mittag_leffler(const MittagLefflerParams& params, double z) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
    throw InputError("mittag_leffler: alpha must be finite and > 0");
  }
  if (!std::isfinite(z) || std::abs(z) > kMittagLefflerMaxAbsZ) {
    throw RangeError("mittag_leffler: |z| = " + std::to_string(std::abs(z)) +
                     " exceeds the reliable range " +
                     std::to_string(kMittagLefflerMaxAbsZ));
  }

  if (z == 0.0) {
    const GammaValue g = gamma(params.beta);
    return g.is_pole ? 0.0 : 1.0 / g.value();
  }

  const double log_abs_z = std::log(std::abs(z));
  const bool alternating = z < 0.0;

  // Neumaier-compensated sum; abs_sum tracks the conditioning of the series.
  double sum = 0.0;
  double compensation = 0.0;
  double abs_sum = 0.0;
  double prev_log_term = std::numeric_limits<double>::infinity();
  int small_run = 0;
  constexpr int kMaxTerms = 200000;

  for (int k = 0; k < kMaxTerms; ++k) {
    const GammaValue g = gamma(params.alpha * k + params.beta);
    double term = 0.0;
    double log_term = -std::numeric_limits<double>::infinity();
    if (!g.is_pole) {
      log_term = k * log_abs_z - g.log_magnitude;
      term = std::exp(log_term) * g.sign;
      if (alternating && (k % 2 == 1)) term = -term;
    }
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
    abs_sum += std::abs(term);
    if (!std::isfinite(abs_sum)) {
      throw RangeError("mittag_leffler: series overflow");
    }

    const double total = std::abs(sum + compensation);
    const bool decreasing = log_term < prev_log_term;
    if (decreasing && std::abs(term) < 1e-16 * total) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
    if (k == kMaxTerms - 1) {
      throw RangeError("mittag_leffler: series did not converge");
    }
    if (!g.is_pole) prev_log_term = log_term;
  }

  const double result = sum + compensation;
  const double estimated_error = 8.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  if (estimated_error > 1e-8 * std::max(1.0, std::abs(result))) {
    throw RangeError("mittag_leffler: cancellation too severe at z = " + std::to_string(z) +
                     " for alpha = " + std::to_string(params.alpha));
  }
  return result;
}

}  // namespace fracpainleve::specfun
