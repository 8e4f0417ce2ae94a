#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cogorder/solver.hpp"
#include "cogorder/workflow.hpp"

namespace cogorder {

/// Task code -> zero-based position.
using PositionVector = std::map<std::string, std::size_t>;

/// Throws DomainError if the ordering repeats a code.
PositionVector positions(std::span<const std::string> ordering);

/// Euclidean norm of the position differences of two orderings of the same
/// task set. The sum of squares is accumulated exactly in integers.
double ordering_distance(std::span<const std::string> a, std::span<const std::string> b);

/// Builds a consensus from positional mode frequencies.
///
/// Positions are filled in ascending order, each with the unused task that
/// appears there most often (ties: ascending code). A slot where no unused
/// task ever appears stays open; open slots are then filled in ascending
/// order by the leftover tasks sorted by mean position (ties: ascending code).
Ordering consensus_ordering(std::span<const Ordering> orderings);

struct ReportRow {
  std::string from;
  std::string to;
  EffectSize resource_cost;
  std::vector<FiredRule> fired_rules;
  EffectSize transition_total;
  EffectSize running_total;
};

std::vector<ReportRow> transition_report(const Solution& solution);

}  // namespace cogorder
