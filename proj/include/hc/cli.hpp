#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hc {

// Exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitEvaluation = 3,
};

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hc
