#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dhzero::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriteria = 9;

/// Runs criterion `id` (1-based). Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);

/// Runs every criterion in order, calling `progress` after each one.
std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& progress = {});

/// "PASS [3] name: detail"
std::string format_line(const CriterionResult& r);

}  // namespace dhzero::acceptance
