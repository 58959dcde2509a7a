#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omegabound::cli {

inline constexpr const char* kToolVersion = "0.3.0";

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kComputationFailure = 2,
  kReproductionFail = 3,
};

/// Runs the command line `args` (without the program name). The result
/// document goes to `out` (or the --out file); progress and diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omegabound::cli
