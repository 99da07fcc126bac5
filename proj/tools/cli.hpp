#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qpiston::cli {

/// Exit codes: 0 success, 1 invalid input, 2 numerical failure.
enum ExitCode { kOk = 0, kInvalidInput = 1, kNumericalFailure = 2 };

/// Runs one command. `args` excludes the program name. Data goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpiston::cli
