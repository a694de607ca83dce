#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracpainleve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`; nothing is written to `out` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracpainleve::cli
