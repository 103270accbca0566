#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pnfield::cli {

/// Exit codes of every subcommand.
enum ExitCode : int { exit_pass = 0, exit_negative = 1, exit_error = 2 };

/// Runs the command line `args` (args[0] is the program name). Reports and
/// tables go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pnfield::cli
