#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "canp/experiments.hpp"

namespace canp::validation {

inline constexpr int kCriteria = 9;

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CriterionResult {
  int criterion = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double time_limit = 0.0;

  [[nodiscard]] bool passed() const;
};

struct ValidationOptions {
  int threads = 0;
  /// Added to every extracted Delta before comparison; nonzero values exercise the failure path.
  double fault_delta = 0.0;
  std::uint64_t seed = 20260518;
};

/// Runs criterion 1..kCriteria. Criterion 9 here covers determinism and peak
/// decay; comparison with checked-in reference CSVs lives in the acceptance suite.
CriterionResult check_criterion(int criterion, const ValidationOptions& opts);

void to_json(nlohmann::json& j, const Check& c);
void to_json(nlohmann::json& j, const CriterionResult& r);

/// Full report for `canp validate`. Requires cfg.oracle. Sets `passed`.
nlohmann::json run_validate(const experiments::RunConfig& cfg, bool& passed);

}  // namespace canp::validation
