#pragma once

// Cross-module self-verification suite behind `hecke verify`.

#include <string>
#include <vector>

namespace hecke {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  unsigned threads = 1;
  /// Adds one to every formula count in the matcount equivalence check, to
  /// demonstrate that the oracle comparison catches a broken formula.
  bool inject_count_fault = false;
};

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace hecke
