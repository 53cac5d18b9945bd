#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mapwss {

/// Exit codes: 0 success, 1 negative verdict, 2 input error, 3 cap exceeded.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitInput = 2, kExitTooLarge = 3 };

/// Runs one subcommand.  `args` excludes the program name.  Reports go to
/// `out` (JSON or CSV), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapwss
