#pragma once

// Verb-based command-line front end. `run` never writes to the process
// streams; the caller prints `output` and `diagnostics`.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage or input
// error, 3 a result is unknown within the budget, 4 internal error.

#include <string>
#include <vector>

namespace oramod::cli {

inline constexpr const char* kVersion = ORAMOD_VERSION;

enum ExitStatus : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kUnknown = 3, kInternal = 4 };

struct RunResult {
  int exit_code = kPass;
  /// Rendered report; empty on usage errors.
  std::string output;
  std::string diagnostics;
  /// The report went to --output instead of standard output.
  bool wrote_file = false;
};

/// `args` excludes the program name.
RunResult run(const std::vector<std::string>& args);

}  // namespace oramod::cli
