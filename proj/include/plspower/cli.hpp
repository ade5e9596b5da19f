#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plspower::cli {

enum ExitCode : int {
    kSuccess = 0,
    kDomainError = 1,
    kUsageError = 2,
    kValidationFailure = 3,
};

}  // namespace plspower::cli

namespace plspower::mc {
struct ValidationReport;
}

namespace plspower::cli {

// kSuccess for a passing Monte Carlo validation, kValidationFailure otherwise.
int validation_exit_code(const mc::ValidationReport& report);

// Runs the command line `args` (args[0] is the program name) and writes all
// output to `out` / `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plspower::cli
