#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chord {

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_precondition = 2, exit_usage = 64 };

/// Runs one `chord` invocation; args[0] is the program name. JSON results go
/// to `out`, diagnostics and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads CHORD_LOG (trace, debug, info, warn, error, off) and sends log
/// output to stderr.
void configure_logging();

}  // namespace chord
