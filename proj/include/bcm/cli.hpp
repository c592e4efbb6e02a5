#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcm::cli {

/// Exit codes of the `bcm` tool.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,    // parse errors, bad files, violated preconditions
  kInadmissible = 3,  // the kernel is not the response of any potential
  kDegenerate = 4,    // Krein degeneracy or eigensolver non-convergence
};

/// Runs the tool on `args` (without the program name). Standard input is read
/// from `in` wherever a path is "-"; results go to `out` unless --output names
/// a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace bcm::cli
