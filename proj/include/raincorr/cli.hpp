#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace raincorr {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

/// Runs the `raincorr` command line (arguments exclude the program name).
/// The final summary line goes to `out`; progress and warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace raincorr
