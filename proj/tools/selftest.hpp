#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace papperitz::cli {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;

  bool ok() const { return passed == total; }
};

/// Runs the built-in invariant suites. Results depend only on the seed and the
/// quick flag.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, bool quick);

}  // namespace papperitz::cli
