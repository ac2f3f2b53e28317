#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nonet {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::json measured;  // measured values and the thresholds they were held to
};

struct AcceptanceCase {
  int id;
  std::string name;
  std::function<CriterionResult(std::uint64_t seed)> run;
};

// All acceptance criteria, in order.
std::vector<AcceptanceCase> acceptance_cases();

// Runs the cases whose id is in `only` (all when empty). A case that throws
// is reported as failed with the exception text.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only = {});

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, std::uint64_t seed);

// "PASS [3] second_order_dominance: key=value ..." for one criterion.
std::string summary_line(const CriterionResult& r);

inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

}  // namespace nonet
