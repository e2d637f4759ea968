#pragma once

#include <iosfwd>

namespace papperitz::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDegenerate = 2,
  kExitUnreachable = 3,
  kExitVerifyFailed = 4,
};

/// Entry point of the papperitz tool; writes results to out and diagnostics
/// to err and returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace papperitz::cli
