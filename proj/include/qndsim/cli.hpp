#pragma once

#include <iosfwd>

namespace qndsim::cli {

// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kIoFailure = 1,
  kValidationError = 2,
  kInfeasibleDesign = 3,
  kNumericalFailure = 4,
};

// Entry point of the `qndsim` tool. argv[0] is the program name.
// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qndsim::cli
