#pragma once

#include <ostream>

namespace titskit::cli {

/// Exit codes of run().
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

/// Entry point of the titskit tool. Human tables or JSON reports go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace titskit::cli
