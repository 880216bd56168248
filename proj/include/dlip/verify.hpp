#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlip/linalg.hpp"
#include "json.hpp"

namespace dlip {

struct VerifyOptions {
  std::uint64_t seed = 7;
  std::uint64_t bound = kDefaultOracleBound;
};

/// Outcome of one acceptance criterion. `passed` needs every asserted check
/// to hold and the run to finish within `limit_seconds`.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks_passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string detail;

  bool passed() const { return checks_passed && seconds <= limit_seconds; }
  /// "PASS  6  lcm tower vs oracle ... (12.3 s, limit 300 s)".
  std::string line() const;
  nlohmann::json to_json() const;
};

inline constexpr int kCriterionCount = 10;

/// Criterion ids for a suite name: all, linalg, dlip, constacyclic, gray.
/// PreconditionFailed for unknown names.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id, const VerifyOptions& options);

}  // namespace dlip
