#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebr::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Documents go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebr::cli
