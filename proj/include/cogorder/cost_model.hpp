#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cogorder/effect_size.hpp"
#include "cogorder/workflow.hpp"

namespace cogorder {

/// Switch costs between dominant cognitive resources, indexed [from][to].
class ResourceTransitionMatrix {
 public:
  using Grid = std::array<std::array<EffectSize, kResourceCount>, kResourceCount>;

  ResourceTransitionMatrix() = default;
  explicit ResourceTransitionMatrix(const Grid& grid) : grid_(grid) {}

  /// Published empirical switch costs (Cohen's d) for VWM, PM, DR, SR, ER.
  static ResourceTransitionMatrix defaults();

  EffectSize at(CognitiveResource from, CognitiveResource to) const {
    return grid_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
  }
  void set(CognitiveResource from, CognitiveResource to, EffectSize cost) {
    grid_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = cost;
  }

  friend bool operator==(const ResourceTransitionMatrix&, const ResourceTransitionMatrix&) = default;

 private:
  Grid grid_{};
};

enum class TransitionRule : std::uint8_t {
  Modality = 0,
  RecentPractice = 1,
  Familiarity = 2,
  VoluntaryComplexityDrop = 3,
  InvoluntaryComplexityDrop = 4,
};

inline constexpr std::size_t kRuleCount = 5;
inline constexpr std::array<TransitionRule, kRuleCount> kAllRules = {
    TransitionRule::Modality, TransitionRule::RecentPractice, TransitionRule::Familiarity,
    TransitionRule::VoluntaryComplexityDrop, TransitionRule::InvoluntaryComplexityDrop};

/// snake_case identifier used in files and reports, e.g. "recent_practice".
std::string_view rule_name(TransitionRule rule);
std::optional<TransitionRule> parse_rule(std::string_view name);

enum class PracticeScope : std::uint8_t { AdjacentOnly, FullHistory };

std::string_view scope_name(PracticeScope scope);
std::optional<PracticeScope> parse_scope(std::string_view name);

struct CostModel {
  ResourceTransitionMatrix matrix = ResourceTransitionMatrix::defaults();
  std::array<EffectSize, kRuleCount> rule_costs = default_rule_costs();
  /// Per-rule switch; a disabled rule never fires.
  std::array<bool, kRuleCount> rule_enabled = {true, true, true, true, true};
  PracticeScope recent_practice_scope = PracticeScope::AdjacentOnly;
  /// Master switch; when false no property rule fires.
  bool rules_enabled = true;

  static std::array<EffectSize, kRuleCount> default_rule_costs();

  EffectSize rule_cost(TransitionRule r) const { return rule_costs[static_cast<std::size_t>(r)]; }
  bool rule_active(TransitionRule r) const { return rules_enabled && rule_enabled[static_cast<std::size_t>(r)]; }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

using FiredRule = std::pair<TransitionRule, EffectSize>;

struct TransitionBreakdown {
  std::string from;
  std::string to;
  EffectSize resource_cost;
  std::vector<FiredRule> fired_rules;
  EffectSize total;

  friend bool operator==(const TransitionBreakdown&, const TransitionBreakdown&) = default;
};

EffectSize resource_switch_cost(CognitiveResource from, CognitiveResource to, const ResourceTransitionMatrix& matrix);

/// Property rules triggered when `cur` follows `prev`. `history` holds every
/// task performed before `cur`, ending with `prev`; only the full-history
/// practice scope looks past its last element. Rules fire in declaration
/// order, at most once each.
std::vector<FiredRule> fired_rules(const Task& prev, const Task& cur, std::span<const Task> history,
                                   const CostModel& model);

TransitionBreakdown transition_cost(const Task& prev, const Task& cur, std::span<const Task> history,
                                    const CostModel& model);

struct SequenceCost {
  EffectSize total;
  std::vector<TransitionBreakdown> breakdowns;
};

/// Sums transition costs over consecutive pairs. Throws DomainError naming
/// the first problem if `ordering` is not a linear extension of `workflow`.
SequenceCost sequence_cost(std::span<const std::string> ordering, const Workflow& workflow, const CostModel& model);

namespace detail {

/// Integer view of the task properties the rules read.
struct TaskTraits {
  CognitiveResource resource;
  std::uint32_t modality;
  bool voluntary;
  int familiarity;
  int complexity;
};

/// Whether `cur` overlaps `other` in modality or resource.
inline bool practiced_by(const TaskTraits& other, const TaskTraits& cur) {
  return other.modality == cur.modality || other.resource == cur.resource;
}

/// Bitmask over kAllRules of the rules that fire. `practiced` is the
/// recent-practice condition already evaluated over the configured scope.
unsigned rule_mask(const TaskTraits& prev, const TaskTraits& cur, bool practiced, const CostModel& model);

/// Total cost in thousandths for one transition.
std::int64_t transition_milli(const TaskTraits& prev, const TaskTraits& cur, bool practiced, const CostModel& model);

}  // namespace detail

}  // namespace cogorder
