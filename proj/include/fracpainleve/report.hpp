#pragma once

// JSON and CSV emission for reports. Key order is fixed, so identical inputs
// produce identical bytes.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracpainleve/existence.hpp"
#include "fracpainleve/painleve.hpp"
#include "fracpainleve/solvers.hpp"

namespace fracpainleve::report {

using Json = nlohmann::ordered_json;

Json to_json(const painleve::PainleveReport& report);
Json to_json(const existence::ExistenceCertificate& cert);
/// Full trajectory plus solver diagnostics.
Json to_json(const solvers::SolutionTrajectory& traj);

/// Envelope shared by every subcommand that emits a report.
Json envelope(const std::vector<std::string>& command, const std::optional<std::string>& digest,
              Json tolerances, const std::string& result_type, Json result);

/// Report text as printed: two-space indent, trailing newline.
std::string dump(const Json& doc);

/// "t,y" header then one row per grid point.
std::string to_csv(const solvers::SolutionTrajectory& traj);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace fracpainleve::report
