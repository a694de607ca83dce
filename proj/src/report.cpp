#include "fracpainleve/report.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace fracpainleve::report {

namespace {

// JSON has no NaN or infinity; those become null.
Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

template <class T>
Json optional_value(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return number(*v);
  } else {
    return *v;
  }
}

Json complex_json(std::complex<double> z) {
  Json out = Json::object();
  out["re"] = number(z.real());
  out["im"] = number(z.imag());
  return out;
}

}  // namespace

Json to_json(const painleve::PainleveReport& r) {
  Json leading = Json::object();
  leading["sigma"] = number(r.leading.sigma);
  leading["amplitude"] = complex_json(r.leading.amplitude);
  leading["balanced_power"] = number(r.leading.balanced_power);
  leading["dominant_coefficient"] = number(r.leading.dominant_coefficient);
  leading["degenerate"] = r.leading.degenerate;

  Json resonances = Json::array();
  for (const auto& res : r.resonances) {
    Json item = Json::object();
    item["value"] = number(res.value);
    item["kind"] = painleve::to_string(res.kind);
    item["residual"] = number(res.residual);
    resonances.push_back(std::move(item));
  }

  Json compat = Json::array();
  for (const auto& e : r.compatibility) {
    Json item = Json::object();
    item["resonance_index"] = optional_value(e.resonance_index);
    item["order"] = e.order;
    item["exponent"] = number(e.exponent);
    item["forcing"] = number(e.forcing);
    item["satisfied"] = e.satisfied;
    item["reason"] = e.reason;
    compat.push_back(std::move(item));
  }

  Json series = Json::array();
  for (const auto& c : r.series_coefficients) series.push_back(complex_json(c));

  Json cascade = Json::array();
  for (const auto& b : r.cascade) {
    Json item = Json::object();
    item["dominant"] = b.dominant;
    item["partner"] = b.partner;
    item["exponent_gap"] = number(b.exponent_gap);
    item["outcome"] = b.outcome;
    cascade.push_back(std::move(item));
  }

  Json out = Json::object();
  out["verdict"] = painleve::to_string(r.verdict);
  out["leading_order"] = std::move(leading);
  out["dominant_term"] = optional_value(r.dominant_term);
  out["resonances"] = std::move(resonances);
  out["has_minus_one"] = r.has_minus_one;
  out["ladder_step"] = number(r.ladder_step);
  out["incommensurate"] = r.incommensurate;
  out["compatibility"] = std::move(compat);
  out["series_coefficients"] = std::move(series);
  out["cascade"] = std::move(cascade);
  return out;
}

Json to_json(const existence::ExistenceCertificate& c) {
  Json out = Json::object();
  out["alpha"] = number(c.alpha);
  out["a"] = number(c.a);
  out["h"] = number(c.h);
  out["interval_end"] = number(c.interval_end());
  out["M"] = optional_value(c.M);
  out["K"] = optional_value(c.K);
  out["K_sampled"] = number(c.K_sampled);
  out["L"] = number(c.L);
  out["lipschitz_estimated"] = c.lipschitz_estimated;
  out["k"] = number(c.k);
  out["apriori_bound_factor"] = number(c.apriori_bound_factor());
  out["sampled"] = c.sampled;
  out["continuation_required"] = c.continuation_required;
  return out;
}

Json to_json(const solvers::SolutionTrajectory& traj) {
  Json grid = Json::array();
  Json values = Json::array();
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    grid.push_back(number(traj.grid[i]));
    values.push_back(number(traj.values[i]));
  }
  Json diffs = Json::array();
  for (double d : traj.differences) diffs.push_back(number(d));

  Json out = Json::object();
  out["method"] = solvers::to_string(traj.method);
  out["points"] = traj.grid.size();
  out["t_end"] = traj.grid.empty() ? Json(nullptr) : number(traj.grid.back());
  out["y_end"] = traj.values.empty() ? Json(nullptr) : number(traj.values.back());
  out["error_bound"] = optional_value(traj.error_bound);
  out["iterations"] = optional_value(traj.iterations);
  out["differences"] = std::move(diffs);
  out["blow_up"] = traj.blow_up;
  out["last_valid_time"] = optional_value(traj.last_valid_time);
  out["grid"] = std::move(grid);
  out["values"] = std::move(values);
  return out;
}

Json envelope(const std::vector<std::string>& command, const std::optional<std::string>& digest,
              Json tolerances, const std::string& result_type, Json result) {
  Json out = Json::object();
  out["tool"] = "fracpainleve";
  out["version"] = FRACPAINLEVE_VERSION;
  out["command"] = command;
  out["input_digest"] = digest ? Json(*digest) : Json(nullptr);
  out["tolerances"] = std::move(tolerances);
  out["result_type"] = result_type;
  out["result"] = std::move(result);
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string to_csv(const solvers::SolutionTrajectory& traj) {
  std::string out = "t,y\n";
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    out += format_double(traj.grid[i]);
    out += ',';
    out += format_double(traj.values[i]);
    out += '\n';
  }
  return out;
}

}  // namespace fracpainleve::report
