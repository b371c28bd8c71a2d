#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace nsreg::cli {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values, and the reproducing inputs on failure
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"norms", "pressure", "energy", "oscillation", "all"};
  return names;
}

/// Runs one invariant suite (or "all"), printing a PASS/FAIL line per property to `out`.
/// Throws ValidationError on an unknown suite name.
std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed, int n, std::ostream& out);

/// Entry point of the nsreg tool; returns the process exit code
/// (0 success, 1 mechanical failure or failed check, 2 usage error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsreg::cli
