#pragma once

// Problem files: JSON documents describing one of three problem kinds.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/existence.hpp"
#include "fracpainleve/expr.hpp"
#include "fracpainleve/painleve.hpp"

namespace fracpainleve::problem {

/// Schema violation; the message starts with the offending field path.
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : InputError(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Kind { power_law, multiterm_linear, ivp };

const char* to_string(Kind k);

/// D^alpha y + lambda y = forcing(t); lets the ml solver and linear certificate run.
struct LinearForm {
  double lambda = 0.0;
  std::optional<expr::Expression> forcing;
};

struct Options {
  int depth = 16;
  painleve::PainleveOptions painleve;
  existence::CertifyOptions certify;
  int sample_density = 64;
  bool certify_linear = false;
  int points = 2000;
  double tol = 1e-10;
  int max_iter = 500;
};

struct ProblemFile {
  Kind kind = Kind::power_law;
  std::optional<std::string> name;
  double alpha = 1.0;
  painleve::PowerLawFde power_law;
  painleve::MultiTermLinearFde multiterm;

  // ivp
  std::optional<expr::Expression> rhs;
  double a = 0.0;
  double b = 1.0;
  double y0 = 0.0;
  double box_radius = 1.0;
  std::optional<double> lipschitz;
  std::optional<LinearForm> linear;

  Options options;
  /// "sha256:<hex>" of the raw file bytes.
  std::string digest;

  existence::IvpProblem ivp() const;
};

ProblemFile parse_problem(const std::filesystem::path& path);

/// Parses already-loaded text; digest is computed over `text`.
ProblemFile parse_problem_text(const std::string& text);

std::string sha256_hex(const std::string& bytes);

}  // namespace fracpainleve::problem
