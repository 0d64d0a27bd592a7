#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcnet {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,   // verify found a property violation
  kExitUsage = 2,       // bad arguments or unparsable input files
  kExitNumerical = 3,   // solver or integrator failure
};

// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcnet
