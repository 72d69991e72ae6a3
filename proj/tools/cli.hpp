#pragma once

#include <iosfwd>

namespace braidstat::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kBudget = 3, kVerification = 4 };

/// Parses argv and runs one subcommand; never throws. Output goes to out,
/// diagnostics to err. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace braidstat::cli
