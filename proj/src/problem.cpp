#include "fracpainleve/problem.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace fracpainleve::problem {

namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) { return parent + "." + key; }

std::string index(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw SchemaError(join(path, key), "unknown field");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(join(path, key), "required field missing");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path, "expected a finite number");
  return x;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  return v;
}

const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected an object");
  return v;
}

double alpha_field(const json& v, const std::string& path) {
  const double alpha = as_number(v, path);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "alpha ∈ (0, 1] required, got " << alpha;
    throw SchemaError(path, msg.str());
  }
  return alpha;
}

double positive(const json& v, const std::string& path) {
  const double x = as_number(v, path);
  if (!(x > 0.0)) throw SchemaError(path, "must be positive");
  return x;
}

int int_at_least(const json& v, const std::string& path, int lo) {
  const int x = as_int(v, path);
  if (x < lo) throw SchemaError(path, "must be >= " + std::to_string(lo));
  return x;
}

expr::Expression expression(const json& v, const std::string& path) {
  const std::string src = as_string(v, path);
  try {
    return expr::Expression::parse(src);
  } catch (const expr::ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

void parse_options(const json& obj, const std::string& path, Kind kind, Options& opt) {
  as_object(obj, path);
  std::set<std::string> known;
  switch (kind) {
    case Kind::power_law:
      known = {"depth", "tol_res", "tol_compat", "r_min", "r_max", "scan_step"};
      break;
    case Kind::multiterm_linear:
      known = {};
      break;
    case Kind::ivp:
      known = {"sample_density", "theta", "certify", "points", "tol", "max_iter"};
      break;
  }
  reject_unknown(obj, path, known);
  auto& pl = opt.painleve;
  if (obj.contains("depth")) {
    opt.depth = as_int(obj["depth"], join(path, "depth"));
    if (opt.depth < 1 || opt.depth > painleve::kMaxDepth) {
      throw SchemaError(join(path, "depth"),
                        "must lie in [1, " + std::to_string(painleve::kMaxDepth) + "]");
    }
  }
  if (obj.contains("tol_res")) pl.tol_res = positive(obj["tol_res"], join(path, "tol_res"));
  if (obj.contains("tol_compat")) {
    pl.tol_compat = positive(obj["tol_compat"], join(path, "tol_compat"));
  }
  if (obj.contains("r_min")) pl.r_min = as_number(obj["r_min"], join(path, "r_min"));
  if (obj.contains("r_max")) pl.r_max = as_number(obj["r_max"], join(path, "r_max"));
  if (!(pl.r_min < pl.r_max)) throw SchemaError(join(path, "r_max"), "must exceed r_min");
  if (obj.contains("scan_step")) pl.scan_step = positive(obj["scan_step"], join(path, "scan_step"));

  if (obj.contains("sample_density")) {
    opt.sample_density = int_at_least(obj["sample_density"], join(path, "sample_density"), 2);
  }
  if (obj.contains("theta")) {
    opt.certify.theta = positive(obj["theta"], join(path, "theta"));
    if (!(opt.certify.theta < 1.0)) throw SchemaError(join(path, "theta"), "must be < 1");
  }
  if (obj.contains("certify")) {
    const std::string mode = as_string(obj["certify"], join(path, "certify"));
    if (mode != "nonlinear" && mode != "linear") {
      throw SchemaError(join(path, "certify"), "must be \"nonlinear\" or \"linear\"");
    }
    opt.certify_linear = mode == "linear";
  }
  if (obj.contains("points")) opt.points = int_at_least(obj["points"], join(path, "points"), 16);
  if (obj.contains("tol")) opt.tol = positive(obj["tol"], join(path, "tol"));
  if (obj.contains("max_iter")) {
    opt.max_iter = int_at_least(obj["max_iter"], join(path, "max_iter"), 1);
  }
}

void parse_power_law(const json& doc, ProblemFile& out) {
  reject_unknown(doc, "$", {"kind", "name", "alpha", "t0", "terms", "options"});
  out.alpha = alpha_field(require(doc, "alpha", "$"), "$.alpha");
  out.power_law.alpha = out.alpha;
  if (doc.contains("t0")) out.power_law.t0 = as_number(doc["t0"], "$.t0");
  const json& terms = as_array(require(doc, "terms", "$"), "$.terms");
  if (terms.empty()) throw SchemaError("$.terms", "at least one term required");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = index("$.terms", i);
    const json& term = as_object(terms[i], p);
    reject_unknown(term, p, {"coefficient", "power"});
    painleve::PowerLawTerm t;
    t.coefficient = as_number(require(term, "coefficient", p), join(p, "coefficient"));
    t.power = as_number(require(term, "power", p), join(p, "power"));
    if (t.power < 1.0) throw SchemaError(join(p, "power"), "must be >= 1");
    out.power_law.terms.push_back(t);
  }
}

void parse_multiterm(const json& doc, ProblemFile& out) {
  reject_unknown(doc, "$", {"kind", "name", "alpha", "orders", "coefficients", "zeroth_coeff",
                            "forcing_at_t0", "options"});
  auto& mt = out.multiterm;
  const json& orders = as_array(require(doc, "orders", "$"), "$.orders");
  const json& coeffs = as_array(require(doc, "coefficients", "$"), "$.coefficients");
  if (orders.empty()) throw SchemaError("$.orders", "at least one order required");
  if (coeffs.size() != orders.size()) {
    throw SchemaError("$.coefficients", "must have the same length as orders");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const std::string p = index("$.orders", i);
    const double order = as_number(orders[i], p);
    if (!(order > 0.0 && order <= 1.0)) throw SchemaError(p, "order ∈ (0, 1] required");
    if (i > 0 && !(order < mt.orders.back())) throw SchemaError(p, "orders must be decreasing");
    mt.orders.push_back(order);
    mt.coefficients.push_back(as_number(coeffs[i], index("$.coefficients", i)));
  }
  mt.zeroth_coeff = as_number(require(doc, "zeroth_coeff", "$"), "$.zeroth_coeff");
  mt.forcing_at_t0 = as_number(require(doc, "forcing_at_t0", "$"), "$.forcing_at_t0");
  out.alpha = mt.orders.front();
  if (doc.contains("alpha")) {
    const double alpha = alpha_field(doc["alpha"], "$.alpha");
    if (alpha != out.alpha) throw SchemaError("$.alpha", "must equal orders[0]");
  }
  try {
    mt.validate();
  } catch (const InputError& e) {
    throw SchemaError("$", e.what());
  }
}

void parse_ivp(const json& doc, ProblemFile& out) {
  reject_unknown(doc, "$", {"kind", "name", "alpha", "rhs", "interval", "y0", "box_radius",
                            "lipschitz", "linear", "options"});
  out.alpha = alpha_field(require(doc, "alpha", "$"), "$.alpha");
  out.rhs = expression(require(doc, "rhs", "$"), "$.rhs");
  const json& interval = as_array(require(doc, "interval", "$"), "$.interval");
  if (interval.size() != 2) throw SchemaError("$.interval", "expected [a, b]");
  out.a = as_number(interval[0], "$.interval[0]");
  out.b = as_number(interval[1], "$.interval[1]");
  if (!(out.a < out.b)) throw SchemaError("$.interval", "must satisfy a < b");
  out.y0 = as_number(require(doc, "y0", "$"), "$.y0");
  out.box_radius = positive(require(doc, "box_radius", "$"), "$.box_radius");
  if (doc.contains("lipschitz")) {
    const double l = as_number(doc["lipschitz"], "$.lipschitz");
    if (l < 0.0) throw SchemaError("$.lipschitz", "must be non-negative");
    out.lipschitz = l;
  }
  if (doc.contains("linear")) {
    const json& lin = as_object(doc["linear"], "$.linear");
    reject_unknown(lin, "$.linear", {"lambda", "forcing"});
    LinearForm form;
    form.lambda = as_number(require(lin, "lambda", "$.linear"), "$.linear.lambda");
    if (lin.contains("forcing")) {
      form.forcing = expression(lin["forcing"], "$.linear.forcing");
      if (form.forcing->uses_y()) throw SchemaError("$.linear.forcing", "must not depend on y");
    }
    out.linear = form;
  }
}

}  // namespace

const char* to_string(Kind k) {
  switch (k) {
    case Kind::power_law: return "power_law";
    case Kind::multiterm_linear: return "multiterm_linear";
    case Kind::ivp: return "ivp";
  }
  return "unknown";
}

existence::IvpProblem ProblemFile::ivp() const {
  if (kind != Kind::ivp || !rhs) throw InputError("problem is not an ivp");
  existence::IvpProblem p;
  p.alpha = alpha;
  p.rhs = [f = *rhs](double t, double y) { return f(t, y); };
  p.a = a;
  p.b = b;
  p.y0 = y0;
  p.lipschitz = lipschitz;
  p.box_radius = box_radius;
  return p;
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  as_object(doc, "$");

  ProblemFile out;
  const std::string kind = as_string(require(doc, "kind", "$"), "$.kind");
  if (kind == "power_law") {
    out.kind = Kind::power_law;
  } else if (kind == "multiterm_linear") {
    out.kind = Kind::multiterm_linear;
  } else if (kind == "ivp") {
    out.kind = Kind::ivp;
  } else {
    throw SchemaError("$.kind", "must be one of power_law, multiterm_linear, ivp");
  }
  if (doc.contains("name")) out.name = as_string(doc["name"], "$.name");

  switch (out.kind) {
    case Kind::power_law: parse_power_law(doc, out); break;
    case Kind::multiterm_linear: parse_multiterm(doc, out); break;
    case Kind::ivp: parse_ivp(doc, out); break;
  }
  if (doc.contains("options")) parse_options(doc["options"], "$.options", out.kind, out.options);
  if (out.options.certify_linear && !out.linear) {
    throw SchemaError("$.options.certify", "\"linear\" requires a linear block");
  }
  out.digest = "sha256:" + sha256_hex(text);
  return out;
}

ProblemFile parse_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

}  // namespace fracpainleve::problem
