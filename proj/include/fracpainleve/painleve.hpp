#pragma once

// Fractional Painleve test: leading-order balance, resonance scan over the
// Gamma-ratio indicial equation, compatibility recursion for the fractional
// power series, and the leading-order cascade for multi-term linear problems.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/specfun.hpp"

namespace fracpainleve::painleve {

/// No term of F(t, y) has power > 1, so no singular balance exists.
class NoBalanceError : public InputError {
 public:
  using InputError::InputError;
};

/// f_i(t0) * y^power
struct PowerLawTerm {
  double coefficient = 0.0;
  double power = 1.0;
};

/// D^alpha y = sum_i f_i(t) y^{p_i}, with only the values f_i(t0) retained.
struct PowerLawFde {
  double alpha = 0.5;
  std::vector<PowerLawTerm> terms;
  double t0 = 0.0;

  /// Throws InputError on alpha outside (0, 1], empty terms, or powers < 1.
  void validate() const;
  /// Terms sorted by descending power (stable for equal powers).
  std::vector<PowerLawTerm> sorted_terms() const;
  bool is_linear() const;
};

/// D^{orders[0]} y + coefficients[1] D^{orders[1]} y + ... + zeroth_coeff y = u(t).
struct MultiTermLinearFde {
  std::vector<double> orders;
  std::vector<double> coefficients;
  double zeroth_coeff = 0.0;
  double forcing_at_t0 = 0.0;

  void validate() const;
};

/// y ~ amplitude (t - t0)^(-sigma)
struct LeadingOrder {
  double sigma = 0.0;
  std::complex<double> amplitude{0.0, 0.0};
  double balanced_power = 1.0;
  /// f(t0) of the dominant term (B); 0 for the regular branch.
  double dominant_coefficient = 0.0;
  bool degenerate = false;
};

enum class ResonanceKind { principal_minus_one, positive, negative_other, near_pole };

struct Resonance {
  double value = 0.0;
  ResonanceKind kind = ResonanceKind::negative_other;
  double residual = 0.0;
};

enum class Verdict {
  passes,
  fails_complex_or_missing_resonance,
  fails_compatibility,
  regular_no_singularity,
  degenerate_balance
};

struct CompatibilityEntry {
  /// Index into the resonance list; empty for pole-struck or unlisted orders.
  std::optional<std::size_t> resonance_index;
  /// Series order k with exponent -sigma + k * ladder_step; 0 when never reached.
  int order = 0;
  double exponent = 0.0;
  /// |forcing| at a resonant order (the coefficient that must vanish).
  double forcing = 0.0;
  bool satisfied = false;
  /// "resonance", "pole_struck", "unlisted_resonance", "incommensurate", "beyond_depth"
  std::string reason;
};

struct CompatibilityResult {
  double ladder_step = 0.0;
  bool incommensurate = false;
  std::vector<CompatibilityEntry> entries;
  /// a_0 .. a_depth of y = sum a_k (t - t0)^(-sigma + k * ladder_step).
  std::vector<std::complex<double>> coefficients;
};

/// One attempted singular balance in the multi-term cascade.
struct BalanceAttempt {
  std::string dominant;
  std::string partner;
  double exponent_gap = 0.0;
  std::string outcome;
};

struct PainleveReport {
  LeadingOrder leading;
  std::optional<std::size_t> dominant_term;
  std::vector<Resonance> resonances;
  bool has_minus_one = false;
  std::vector<CompatibilityEntry> compatibility;
  double ladder_step = 0.0;
  bool incommensurate = false;
  std::vector<std::complex<double>> series_coefficients;
  std::vector<BalanceAttempt> cascade;
  Verdict verdict = Verdict::fails_complex_or_missing_resonance;
};

struct PainleveOptions {
  double r_min = -10.0;
  double r_max = 10.0;
  double scan_step = 1e-3;
  double pole_band = 1e-6;
  double bisection_tol = 1e-10;
  double tol_res = 1e-8;
  double tol_compat = 1e-8;
  double minus_one_tol = 1e-6;
  double ladder_tol = 1e-6;
  int max_ladder_denominator = 64;
};

inline constexpr int kMaxDepth = 64;

const char* to_string(Verdict v);
const char* to_string(ResonanceKind k);

/// Index (in sorted_terms order) of the term that sets the balance:
/// highest power, ties broken by largest |coefficient|.
std::size_t dominant_term_index(const PowerLawFde& problem);

LeadingOrder leading_order(const PowerLawFde& problem);

/// g(r) = Gamma(-sigma + r + 1) / Gamma(-sigma + r - alpha + 1), removable
/// both-pole points resolved by their limit.
specfun::GammaRatio indicial_function(double alpha, double sigma, double r);

/// Real roots of g(r) = rhs on the scan window, ascending.
std::vector<Resonance> find_resonances(double alpha, double sigma, double rhs,
                                       const PainleveOptions& options = {});

/// p f(t0) A^(p-1) for the dominant term.
double indicial_rhs(const LeadingOrder& leading);

std::vector<Resonance> resonances(const PowerLawFde& problem, const LeadingOrder& leading,
                                  const PainleveOptions& options = {});

CompatibilityResult compatibility(const PowerLawFde& problem, const LeadingOrder& leading,
                                  const std::vector<Resonance>& res, int depth,
                                  const PainleveOptions& options = {});

/// True iff the forcing coefficient at a resonance vanishes within tol.
bool resonance_condition_holds(std::complex<double> forcing, double tol);

PainleveReport run_test(const PowerLawFde& problem, int depth,
                        const PainleveOptions& options = {});

PainleveReport analyze_multiterm(const MultiTermLinearFde& problem);

}  // namespace fracpainleve::painleve
