#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gme::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2, kVerificationFailure = 3 };

/// Runs one invocation; args exclude the program name. Diagnostics go to `err` as a single line
/// "error: <kind>: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gme::cli
