#pragma once

#include <iosfwd>

namespace weylaw::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Parses argv, runs one subcommand and writes its report to `out`.
/// Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weylaw::cli
