#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcrank::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,      // usage, parse or validation failure
  kNumericalError = 3,  // EVM did not converge, or a bound check failed
  kIoError = 4,
};

// Entry point behind the `pcrank` executable. Results go to `out`,
// diagnostics (and the experiment summary) to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcrank::cli
