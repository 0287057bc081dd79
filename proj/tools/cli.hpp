#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frontlab::cli {

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace frontlab::cli
