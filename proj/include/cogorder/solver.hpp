#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cogorder/cost_model.hpp"
#include "cogorder/workflow.hpp"

namespace cogorder {

enum class Objective { Minimize, Maximize };
enum class Backend { BranchAndBound, Exhaustive };

std::string_view objective_name(Objective o);
std::string_view backend_name(Backend b);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct Solution {
  Ordering ordering;
  EffectSize total;
  std::vector<TransitionBreakdown> breakdowns;
  SearchStats stats;  // shared by every solution of one run
};

inline constexpr std::uint64_t kDefaultBruteForceBudget = 10'000'000;

struct SolveRequest {
  Workflow workflow;
  CostModel model;
  Objective objective = Objective::Minimize;
  std::size_t k = 1;
  Backend backend = Backend::BranchAndBound;
  /// Worker threads for the branch-and-bound backend. Output does not depend
  /// on this value.
  unsigned workers = 1;
  /// Upper limit on linear extensions for the exhaustive backend.
  std::uint64_t budget = kDefaultBruteForceBudget;
};

/// Best-first solutions, at most k. Equal totals are ordered by ascending
/// code sequence. Throws DomainError for invalid or non-concrete workflows.
std::vector<Solution> solve(const SolveRequest& request);

/// Exhaustive oracle: evaluates sequence_cost on every linear extension and
/// returns the extremal one. Throws DomainError when the extension count
/// exceeds `budget`.
Solution brute_force(const Workflow& workflow, const CostModel& model, Objective objective,
                     std::uint64_t budget = kDefaultBruteForceBudget);

struct VariantRow {
  /// (group, member) for every variant group of the input workflow.
  std::vector<std::pair<std::string, std::string>> choice;
  Solution solution;
};

struct VariantComparison {
  std::vector<VariantRow> rows;  // ascending by total
  /// Dearest minus cheapest variant total.
  EffectSize spread;
};

/// Minimizes every combination of variant members (one row per member when
/// there is a single group). Throws DomainError when there are no groups.
VariantComparison compare_variants(const Workflow& workflow, const CostModel& model, unsigned workers = 1);

}  // namespace cogorder
