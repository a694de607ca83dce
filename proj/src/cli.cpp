#include "fracpainleve/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/fracops.hpp"
#include "fracpainleve/problem.hpp"
#include "fracpainleve/report.hpp"
#include "fracpainleve/solvers.hpp"
#include "fracpainleve/specfun.hpp"

namespace fracpainleve::cli {

namespace {

using report::Json;

struct Flags {
  std::string problem;
  std::optional<int> depth;
  std::string method;
  std::optional<int> points;
  std::optional<double> tol;
  std::string format = "json";
  double alpha = 0.0;
  double beta = 1.0;
  double z = 0.0;
  double gamma = 0.0;
  double t = 1.0;
};

Json painleve_tolerances(const problem::Options& o) {
  Json tol = Json::object();
  tol["depth"] = o.depth;
  tol["r_min"] = o.painleve.r_min;
  tol["r_max"] = o.painleve.r_max;
  tol["scan_step"] = o.painleve.scan_step;
  tol["tol_res"] = o.painleve.tol_res;
  tol["tol_compat"] = o.painleve.tol_compat;
  tol["minus_one_tol"] = o.painleve.minus_one_tol;
  tol["ladder_tol"] = o.painleve.ladder_tol;
  return tol;
}

Json certify_tolerances(const problem::Options& o) {
  Json tol = Json::object();
  tol["mode"] = o.certify_linear ? "linear" : "nonlinear";
  tol["sample_density"] = o.sample_density;
  tol["theta"] = o.certify.theta;
  tol["sup_inflation"] = o.certify.sup_inflation;
  tol["lipschitz_fd_inflation"] = o.certify.lipschitz_fd_inflation;
  return tol;
}

void require_kind(const problem::ProblemFile& pf, problem::Kind kind, const std::string& cmd) {
  if (pf.kind != kind) {
    throw InputError("$.kind: " + cmd + " needs a " + problem::to_string(kind) +
                     " problem, got " + problem::to_string(pf.kind));
  }
}

existence::ExistenceCertificate certificate(const problem::ProblemFile& pf) {
  const auto& o = pf.options;
  if (o.certify_linear) {
    const double lambda = pf.linear->lambda;
    return existence::certify_linear(
        pf.alpha, [lambda](double) { return -lambda; }, pf.a, pf.b, o.sample_density, o.certify);
  }
  return existence::certify_nonlinear(pf.ivp(), o.sample_density, o.certify);
}

std::string cmd_painleve(const Flags& f, const std::vector<std::string>& args) {
  problem::ProblemFile pf = problem::parse_problem(f.problem);
  if (f.depth) {
    if (*f.depth < 1 || *f.depth > painleve::kMaxDepth) {
      throw InputError("--depth must lie in [1, " + std::to_string(painleve::kMaxDepth) + "]");
    }
    pf.options.depth = *f.depth;
  }
  painleve::PainleveReport rep;
  if (pf.kind == problem::Kind::power_law) {
    rep = painleve::run_test(pf.power_law, pf.options.depth, pf.options.painleve);
  } else if (pf.kind == problem::Kind::multiterm_linear) {
    rep = painleve::analyze_multiterm(pf.multiterm);
  } else {
    throw InputError("$.kind: painleve needs a power_law or multiterm_linear problem");
  }
  return report::dump(report::envelope(args, pf.digest, painleve_tolerances(pf.options),
                                       "painleve_report", report::to_json(rep)));
}

std::string cmd_certify(const Flags& f, const std::vector<std::string>& args) {
  const problem::ProblemFile pf = problem::parse_problem(f.problem);
  require_kind(pf, problem::Kind::ivp, "certify");
  const auto cert = certificate(pf);
  return report::dump(report::envelope(args, pf.digest, certify_tolerances(pf.options),
                                       "existence_certificate", report::to_json(cert)));
}

std::string cmd_solve(const Flags& f, const std::vector<std::string>& args) {
  problem::ProblemFile pf = problem::parse_problem(f.problem);
  require_kind(pf, problem::Kind::ivp, "solve");
  if (f.points) {
    if (*f.points < 16) throw InputError("--points must be >= 16");
    pf.options.points = *f.points;
  }
  if (f.tol) {
    if (!(*f.tol > 0.0)) throw InputError("--tol must be positive");
    pf.options.tol = *f.tol;
  }
  const auto& o = pf.options;

  Json tol = certify_tolerances(o);
  tol["method"] = f.method;
  tol["points"] = o.points;
  tol["tol"] = o.tol;
  tol["max_iter"] = o.max_iter;
  tol["blow_up_threshold"] = solvers::kBlowUpThreshold;

  solvers::SolutionTrajectory traj;
  std::optional<existence::ExistenceCertificate> cert;
  if (f.method == "picard") {
    cert = certificate(pf);
    traj = solvers::picard_solve(pf.ivp(), *cert, o.points, o.tol, o.max_iter);
  } else if (f.method == "ml") {
    if (!pf.linear) throw InputError("$.linear: --method ml needs a linear block");
    std::function<double(double)> forcing;
    if (pf.linear->forcing) forcing = [g = *pf.linear->forcing](double t) { return g(t, 0.0); };
    const auto grid = fracops::uniform_grid(pf.a, pf.b, static_cast<std::size_t>(o.points));
    traj = solvers::solve_linear_ml(pf.alpha, pf.linear->lambda, forcing, pf.y0, grid);
  } else {
    traj = solvers::abm_solve(pf.ivp(), o.points);
  }

  if (f.format == "csv") return report::to_csv(traj);
  Json result = Json::object();
  result["trajectory"] = report::to_json(traj);
  result["certificate"] = cert ? report::to_json(*cert) : Json(nullptr);
  return report::dump(
      report::envelope(args, pf.digest, std::move(tol), "solution_trajectory", std::move(result)));
}

std::string cmd_ml(const Flags& f) {
  const double v = specfun::mittag_leffler({f.alpha, f.beta}, f.z);
  return report::format_double(v) + "\n";
}

std::string cmd_caputo(const Flags& f) {
  const fracops::PowerTerm term{1.0, f.gamma, 0.0};
  return report::format_double(fracops::caputo_power(term, f.alpha, f.t)) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Painleve test and existence toolkit", "fracpainleve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FRACPAINLEVE_VERSION);
  Flags f;

  auto* painleve_cmd = app.add_subcommand("painleve", "Painleve test of a problem file");
  painleve_cmd->add_option("--problem", f.problem, "Problem file (JSON)")->required();
  painleve_cmd->add_option("--depth", f.depth, "Compatibility recursion depth (1..64)");

  auto* certify_cmd = app.add_subcommand("certify", "Existence certificate for an ivp file");
  certify_cmd->add_option("--problem", f.problem, "Problem file (JSON)")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Solve an ivp file");
  solve_cmd->add_option("--problem", f.problem, "Problem file (JSON)")->required();
  solve_cmd->add_option("--method", f.method, "picard, ml or abm")
      ->required()
      ->check(CLI::IsMember({"picard", "ml", "abm"}));
  solve_cmd->add_option("--points", f.points, "Grid points");
  solve_cmd->add_option("--tol", f.tol, "Picard stopping tolerance");
  solve_cmd->add_option("--format", f.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* ml_cmd = app.add_subcommand("ml", "Evaluate E_{alpha,beta}(z)");
  ml_cmd->add_option("--alpha", f.alpha)->required();
  ml_cmd->add_option("--beta", f.beta);
  ml_cmd->add_option("--z", f.z)->required();

  auto* caputo_cmd = app.add_subcommand("caputo", "Caputo derivative of t^gamma at t");
  caputo_cmd->add_option("--alpha", f.alpha)->required();
  caputo_cmd->add_option("--gamma", f.gamma)->required();
  caputo_cmd->add_option("--t", f.t);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    std::string text;
    if (painleve_cmd->parsed()) {
      text = cmd_painleve(f, args);
    } else if (certify_cmd->parsed()) {
      text = cmd_certify(f, args);
    } else if (solve_cmd->parsed()) {
      text = cmd_solve(f, args);
    } else if (ml_cmd->parsed()) {
      text = cmd_ml(f);
    } else {
      text = cmd_caputo(f);
    }
    out << text;
    out.flush();
    return kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace fracpainleve::cli
