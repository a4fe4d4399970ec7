#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace odo {

// Exit codes of the command-line driver.
enum ExitCode : int { kExitVerified = 0, kExitRefuted = 1, kExitInconclusive = 2, kExitUsage = 3 };

// Runs the driver on argv[1..] in-process; records go to `out` unless --out
// redirects them, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odo
