#include "fracpainleve/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracpainleve/parallel.hpp"

namespace fracpainleve::painleve {

namespace {

using cplx = std::complex<double>;

bool is_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

// Root A of A^n = q, preferring a real root when one exists.
cplx amplitude_root(double q, double n) {
  if (q > 0.0) return {std::pow(q, 1.0 / n), 0.0};
  const double mag = std::pow(-q, 1.0 / n);
  if (is_integer(n) && std::fmod(std::round(n), 2.0) != 0.0) return {-mag, 0.0};
  return std::polar(mag, std::numbers::pi / n);
}

cplx power_of(cplx base, double p) {
  if (is_integer(p) && p >= 0.0 && p <= 64.0) {
    cplx out{1.0, 0.0};
    for (int i = 0; i < static_cast<int>(std::round(p)); ++i) out *= base;
    return out;
  }
  return std::pow(base, p);
}

// Coefficient n of (sum_k a_k x^k)^p, from a_0..a_n (Miller recurrence).
cplx power_series_coeff(const std::vector<cplx>& a, double p, int n) {
  if (n < 0) return {0.0, 0.0};
  std::vector<cplx> w(static_cast<std::size_t>(n) + 1);
  w[0] = power_of(a[0], p);
  for (int m = 1; m <= n; ++m) {
    cplx acc{0.0, 0.0};
    for (int j = 1; j <= m; ++j) {
      acc += ((p + 1.0) * j - m) * a[static_cast<std::size_t>(j)] *
             w[static_cast<std::size_t>(m - j)];
    }
    w[static_cast<std::size_t>(m)] = acc / (static_cast<double>(m) * a[0]);
  }
  return w[static_cast<std::size_t>(n)];
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
}

std::string term_label(double coefficient, double order) {
  std::ostringstream os;
  os << coefficient << "*";
  if (order > 0.0) os << "D^" << order << " ";
  os << "y";
  return os.str();
}

}  // namespace

void PowerLawFde::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (terms.empty()) throw InputError("power-law problem needs at least one term");
  for (const auto& t : terms) {
    require_finite(t.coefficient, "term coefficient");
    require_finite(t.power, "term power");
    if (t.power < 1.0) throw InputError("term powers must be >= 1");
  }
}

std::vector<PowerLawTerm> PowerLawFde::sorted_terms() const {
  std::vector<PowerLawTerm> out = terms;
  std::stable_sort(out.begin(), out.end(),
                   [](const PowerLawTerm& a, const PowerLawTerm& b) { return a.power > b.power; });
  // Equal powers are one monomial; merge their coefficients.
  std::vector<PowerLawTerm> merged;
  for (const auto& t : out) {
    if (!merged.empty() && merged.back().power == t.power) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  return merged;
}

bool PowerLawFde::is_linear() const {
  for (const auto& t : sorted_terms()) {
    if (t.coefficient != 0.0 && t.power > 1.0) return false;
  }
  return true;
}

void MultiTermLinearFde::validate() const {
  if (orders.empty()) throw InputError("multi-term problem needs at least one order");
  if (coefficients.size() != orders.size()) {
    throw InputError("orders and coefficients must have equal length");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    require_finite(orders[i], "order");
    require_finite(coefficients[i], "coefficient");
    if (!(orders[i] > 0.0 && orders[i] <= 1.0)) {
      throw InputError("orders must lie in (0, 1], got " + std::to_string(orders[i]));
    }
    if (i > 0 && !(orders[i] < orders[i - 1])) {
      throw InputError("orders must be strictly descending");
    }
  }
  if (coefficients[0] == 0.0) throw InputError("leading coefficient must be nonzero");
  require_finite(zeroth_coeff, "zeroth_coeff");
  require_finite(forcing_at_t0, "forcing_at_t0");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::passes: return "passes";
    case Verdict::fails_complex_or_missing_resonance: return "fails_complex_or_missing_resonance";
    case Verdict::fails_compatibility: return "fails_compatibility";
    case Verdict::regular_no_singularity: return "regular_no_singularity";
    case Verdict::degenerate_balance: return "degenerate_balance";
  }
  return "unknown";
}

const char* to_string(ResonanceKind k) {
  switch (k) {
    case ResonanceKind::principal_minus_one: return "principal_minus_one";
    case ResonanceKind::positive: return "positive";
    case ResonanceKind::negative_other: return "negative_other";
    case ResonanceKind::near_pole: return "near_pole";
  }
  return "unknown";
}

std::size_t dominant_term_index(const PowerLawFde& problem) {
  const auto terms = problem.sorted_terms();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0.0) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& b = terms[*best];
    if (terms[i].power > b.power ||
        (terms[i].power == b.power && std::abs(terms[i].coefficient) > std::abs(b.coefficient))) {
      best = i;
    }
  }
  if (!best) throw NoBalanceError("every term of F has a zero coefficient");
  return *best;
}

LeadingOrder leading_order(const PowerLawFde& problem) {
  problem.validate();
  const auto terms = problem.sorted_terms();
  const PowerLawTerm& dom = terms[dominant_term_index(problem)];
  if (dom.power <= 1.0) {
    throw NoBalanceError("no term with power > 1: no singular leading-order balance");
  }
  LeadingOrder lo;
  lo.balanced_power = dom.power;
  lo.dominant_coefficient = dom.coefficient;
  lo.sigma = problem.alpha / (dom.power - 1.0);

  // A Gamma(1-s)/Gamma(1-s-alpha) = B A^m
  const specfun::GammaRatio ratio =
      specfun::gamma_ratio_limit(1.0 - lo.sigma, 1.0 - lo.sigma - problem.alpha);
  if (!ratio.is_finite() || ratio.value == 0.0) {
    lo.degenerate = true;
    return lo;
  }
  lo.amplitude = amplitude_root(ratio.value / dom.coefficient, dom.power - 1.0);
  return lo;
}

specfun::GammaRatio indicial_function(double alpha, double sigma, double r) {
  return specfun::gamma_ratio_limit(-sigma + r + 1.0, -sigma + r - alpha + 1.0);
}

double indicial_rhs(const LeadingOrder& leading) {
  const double p = leading.balanced_power;
  return (p * leading.dominant_coefficient * power_of(leading.amplitude, p - 1.0)).real();
}

std::vector<Resonance> find_resonances(double alpha, double sigma, double rhs,
                                       const PainleveOptions& options) {
  const double step = options.scan_step;
  const double inv = 1.0 / step;
  const bool integral_inv = is_integer(inv, 1e-9);
  const long i_lo = static_cast<long>(std::ceil(options.r_min / step - 1e-9));
  const long i_hi = static_cast<long>(std::floor(options.r_max / step + 1e-9));
  const auto r_at = [&](long i) {
    return integral_inv ? static_cast<double>(i) / std::round(inv) : static_cast<double>(i) * step;
  };

  const auto residual = [&](double r) -> std::optional<double> {
    const specfun::GammaRatio g = indicial_function(alpha, sigma, r);
    if (!g.is_finite() || !std::isfinite(g.value)) return std::nullopt;
    return g.value - rhs;
  };

  // Non-removable singularities of g: Gamma(-sigma + r + 1) poles that the
  // denominator does not cancel.
  const auto pole_between = [&](double lo, double hi) {
    const double band = options.pole_band;
    const long n_min = static_cast<long>(std::ceil(sigma - 1.0 - hi - band));
    const long n_max = static_cast<long>(std::floor(sigma - 1.0 - lo + band));
    for (long n = std::max(0L, n_min); n <= n_max; ++n) {
      const double p = sigma - 1.0 - static_cast<double>(n);
      if (indicial_function(alpha, sigma, p).kind == specfun::GammaRatio::Kind::infinite) {
        return true;
      }
    }
    return false;
  };

  const auto near_gamma_pole = [&](double r) {
    const double band = options.pole_band;
    const double num = -sigma + r + 1.0;
    const double den = num - alpha;
    const auto near = [&](double x) {
      return std::round(x) <= 0.0 && std::abs(x - std::round(x)) < band;
    };
    const bool removable = near(num) && near(den);
    return (near(num) || near(den)) && !removable;
  };

  const std::size_t count = static_cast<std::size_t>(i_hi - i_lo + 1);
  std::vector<std::optional<double>> values(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) values[k] = residual(r_at(i_lo + static_cast<long>(k)));
  });

  std::vector<double> roots;
  for (std::size_t k = 0; k < count; ++k) {
    const double r = r_at(i_lo + static_cast<long>(k));
    if (values[k] && *values[k] == 0.0) {
      roots.push_back(r);
      continue;
    }
    if (k + 1 >= count) break;
    const auto& f0 = values[k];
    const auto& f1 = values[k + 1];
    if (!f0 || !f1 || *f1 == 0.0 || (*f0 < 0.0) == (*f1 < 0.0)) continue;
    double lo = r;
    double hi = r_at(i_lo + static_cast<long>(k) + 1);
    if (pole_between(lo, hi)) continue;

    double flo = *f0;
    bool ok = true;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const auto fm = residual(mid);
      if (!fm) {
        ok = false;
        break;
      }
      if (*fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((*fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = *fm;
      } else {
        hi = mid;
      }
    }
    if (ok) roots.push_back(0.5 * (lo + hi));
  }

  std::vector<Resonance> out;
  for (double r : roots) {
    const auto res = residual(r);
    if (!res || std::abs(*res) > options.tol_res) continue;
    if (!out.empty() && std::abs(out.back().value - r) < 1e-9) continue;
    Resonance item;
    item.value = r;
    item.residual = std::abs(*res);
    if (std::abs(r + 1.0) <= options.minus_one_tol) {
      item.kind = ResonanceKind::principal_minus_one;
    } else if (near_gamma_pole(r)) {
      item.kind = ResonanceKind::near_pole;
    } else if (r > 0.0) {
      item.kind = ResonanceKind::positive;
    } else {
      item.kind = ResonanceKind::negative_other;
    }
    out.push_back(item);
  }
  return out;
}

std::vector<Resonance> resonances(const PowerLawFde& problem, const LeadingOrder& leading,
                                  const PainleveOptions& options) {
  if (leading.degenerate) throw InputError("resonances: leading order is degenerate");
  return find_resonances(problem.alpha, leading.sigma, indicial_rhs(leading), options);
}

bool resonance_condition_holds(std::complex<double> forcing, double tol) {
  return std::abs(forcing) <= tol;
}

CompatibilityResult compatibility(const PowerLawFde& problem, const LeadingOrder& leading,
                                  const std::vector<Resonance>& res, int depth,
                                  const PainleveOptions& options) {
  if (depth < 1) throw InputError("compatibility: depth must be >= 1");
  if (depth > kMaxDepth) {
    throw InputError("compatibility: depth " + std::to_string(depth) + " exceeds the maximum " +
                     std::to_string(kMaxDepth));
  }
  if (leading.degenerate) throw InputError("compatibility: leading order is degenerate");

  const double alpha = problem.alpha;
  const double sigma = leading.sigma;
  const double tol = options.ladder_tol;
  const auto terms = problem.sorted_terms();

  CompatibilityResult result;
  result.coefficients.push_back(leading.amplitude);

  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (res[i].value > tol && res[i].kind != ResonanceKind::principal_minus_one) {
      positive.push_back(i);
    }
  }

  // Exponent gap between D^alpha of the series and each term of F, in
  // absolute units; a term at gap g feeds LHS order k from its own order k - g/step.
  std::vector<double> gaps;
  for (const auto& t : terms) {
    const double gap = alpha - (t.power - 1.0) * sigma;
    if (gap < -tol) {
      throw InputError("compatibility: a term of F is more singular than the balance");
    }
    gaps.push_back(std::max(0.0, gap));
  }

  std::vector<double> required{alpha};
  for (std::size_t i : positive) required.push_back(res[i].value);
  for (double g : gaps) {
    if (g > tol) required.push_back(g);
  }
  const double base = *std::min_element(required.begin(), required.end());

  double step = 0.0;
  for (int den = 1; den <= options.max_ladder_denominator; ++den) {
    const double candidate = base / den;
    const bool fits = std::all_of(required.begin(), required.end(), [&](double x) {
      return std::abs(x / candidate - std::round(x / candidate)) * candidate <= tol;
    });
    if (fits) {
      step = candidate;
      break;
    }
  }
  if (step == 0.0) {
    result.incommensurate = true;
    for (std::size_t i : positive) {
      result.entries.push_back({i, 0, 0.0, 0.0, false, "incommensurate"});
    }
    return result;
  }
  result.ladder_step = step;

  std::vector<int> shifts;
  for (double g : gaps) shifts.push_back(static_cast<int>(std::lround(g / step)));

  const auto resonance_at = [&](int k) -> std::optional<std::size_t> {
    for (std::size_t i : positive) {
      if (std::lround(res[i].value / step) == k) return i;
    }
    return std::nullopt;
  };

  std::vector<cplx>& a = result.coefficients;
  cplx dominant_slope{0.0, 0.0};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (shifts[i] == 0) {
      dominant_slope += terms[i].power * terms[i].coefficient *
                        power_of(a[0], terms[i].power - 1.0);
    }
  }

  for (int k = 1; k <= depth; ++k) {
    const double exponent = -sigma + k * step;
    bool pole_struck = false;
    double g = 0.0;
    // Caputo derivative of a constant vanishes.
    if (std::abs(exponent) > 1e-12) {
      const specfun::GammaRatio ratio =
          specfun::gamma_ratio_limit(exponent + 1.0, exponent - alpha + 1.0);
      if (ratio.is_finite()) {
        g = ratio.value;
      } else {
        pole_struck = true;
      }
    }

    a.push_back({0.0, 0.0});
    cplx forcing{0.0, 0.0};
    for (std::size_t i = 0; i < terms.size(); ++i) {
      forcing += terms[i].coefficient * power_series_coeff(a, terms[i].power, k - shifts[i]);
    }
    const cplx linear = g - dominant_slope;

    if (const auto idx = resonance_at(k)) {
      result.entries.push_back({idx, k, exponent, std::abs(forcing),
                                resonance_condition_holds(forcing, options.tol_compat),
                                "resonance"});
      continue;  // a_k is the free constant; take 0
    }
    if (pole_struck) {
      result.entries.push_back({std::nullopt, k, exponent, std::abs(forcing), false,
                                "pole_struck"});
      continue;
    }
    if (std::abs(linear) <= 1e-12 * std::max(1.0, std::abs(g))) {
      result.entries.push_back({std::nullopt, k, exponent, std::abs(forcing),
                                resonance_condition_holds(forcing, options.tol_compat),
                                "unlisted_resonance"});
      continue;
    }
    a.back() = forcing / linear;
  }

  for (std::size_t i : positive) {
    const long k = std::lround(res[i].value / step);
    if (k > depth) {
      result.entries.push_back({i, static_cast<int>(k), -sigma + k * step, 0.0, false,
                                "beyond_depth"});
    }
  }
  return result;
}

PainleveReport run_test(const PowerLawFde& problem, int depth, const PainleveOptions& options) {
  PainleveReport report;
  report.leading = leading_order(problem);
  report.dominant_term = dominant_term_index(problem);
  if (report.leading.degenerate) {
    report.verdict = Verdict::degenerate_balance;
    return report;
  }
  report.resonances = resonances(problem, report.leading, options);
  report.has_minus_one = std::any_of(report.resonances.begin(), report.resonances.end(),
                                     [](const Resonance& r) {
                                       return r.kind == ResonanceKind::principal_minus_one;
                                     });

  const CompatibilityResult compat =
      compatibility(problem, report.leading, report.resonances, depth, options);
  report.compatibility = compat.entries;
  report.ladder_step = compat.ladder_step;
  report.incommensurate = compat.incommensurate;
  report.series_coefficients = compat.coefficients;

  const bool all_satisfied =
      !compat.incommensurate &&
      std::all_of(compat.entries.begin(), compat.entries.end(),
                  [](const CompatibilityEntry& e) { return e.satisfied; });
  if (!report.has_minus_one) {
    report.verdict = Verdict::fails_complex_or_missing_resonance;
  } else if (!all_satisfied) {
    report.verdict = Verdict::fails_compatibility;
  } else {
    report.verdict = Verdict::passes;
  }
  return report;
}

PainleveReport analyze_multiterm(const MultiTermLinearFde& problem) {
  problem.validate();

  // Terms in descending singularity: D^{orders[i]} y carries exponent
  // -sigma - orders[i]; b y carries -sigma.
  struct Term {
    std::string label;
    double order;
  };
  std::vector<Term> cascade_terms;
  for (std::size_t i = 0; i < problem.orders.size(); ++i) {
    cascade_terms.push_back({term_label(problem.coefficients[i], problem.orders[i]),
                             problem.orders[i]});
  }
  if (problem.zeroth_coeff != 0.0) cascade_terms.push_back({term_label(problem.zeroth_coeff, 0.0), 0.0});

  PainleveReport report;
  // Each singular balance: the dominant term's coefficient times
  // Gamma(1 - sigma)/Gamma(1 - sigma - order) must vanish once the less
  // singular partner drops out as (t - t0)^gap -> 0; with the Gamma
  // functions defined this forces A = 0.
  for (std::size_t i = 0; i < cascade_terms.size(); ++i) {
    BalanceAttempt attempt;
    attempt.dominant = cascade_terms[i].label;
    if (i + 1 < cascade_terms.size()) {
      attempt.partner = cascade_terms[i + 1].label;
      attempt.exponent_gap = cascade_terms[i].order - cascade_terms[i + 1].order;
    } else {
      attempt.partner = "u(t)";
      attempt.exponent_gap = cascade_terms[i].order;
    }
    attempt.outcome = "forces_zero_amplitude";
    report.cascade.push_back(attempt);
  }

  if (problem.zeroth_coeff == 0.0) {
    throw DomainError("analyze_multiterm: zeroth_coeff = 0, cannot solve b A = u(t0)");
  }
  report.leading.sigma = 0.0;
  report.leading.amplitude = {problem.forcing_at_t0 / problem.zeroth_coeff, 0.0};
  report.leading.balanced_power = 1.0;
  report.leading.dominant_coefficient = problem.zeroth_coeff;
  report.verdict = Verdict::regular_no_singularity;
  return report;
}

}  // namespace fracpainleve::painleve
