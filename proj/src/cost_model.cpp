#include "cogorder/cost_model.hpp"

#include "cogorder/error.hpp"

namespace cogorder {

ResourceTransitionMatrix ResourceTransitionMatrix::defaults() {
  // Rows are the resource switched from, columns the resource switched to,
  // both in VWM, PM, DR, SR, ER order. Values in thousandths of Cohen's d.
  static constexpr std::int64_t kTable[kResourceCount][kResourceCount] = {
      {0, 495, 495, 495, 157},     // VWM
      {495, 0, 495, 699, 699},     // PM
      {495, 495, 0, 482, 482},     // DR
      {495, 842, 1078, 0, 433},    // SR
      {307, 842, 1078, 354, 0},    // ER
  };
  Grid grid{};
  for (std::size_t i = 0; i < kResourceCount; ++i)
    for (std::size_t j = 0; j < kResourceCount; ++j) grid[i][j] = EffectSize::from_milli(kTable[i][j]);
  return ResourceTransitionMatrix(grid);
}

std::array<EffectSize, kRuleCount> CostModel::default_rule_costs() {
  return {EffectSize::from_milli(160), EffectSize::from_milli(310), EffectSize::from_milli(420),
          EffectSize::from_milli(2920), EffectSize::from_milli(1630)};
}

std::string_view rule_name(TransitionRule rule) {
  switch (rule) {
    case TransitionRule::Modality: return "modality";
    case TransitionRule::RecentPractice: return "recent_practice";
    case TransitionRule::Familiarity: return "familiarity";
    case TransitionRule::VoluntaryComplexityDrop: return "voluntary_complexity_drop";
    case TransitionRule::InvoluntaryComplexityDrop: return "involuntary_complexity_drop";
  }
  return "?";
}

std::optional<TransitionRule> parse_rule(std::string_view name) {
  for (auto r : kAllRules)
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

std::string_view scope_name(PracticeScope scope) {
  return scope == PracticeScope::AdjacentOnly ? "adjacent-only" : "full-history";
}

std::optional<PracticeScope> parse_scope(std::string_view name) {
  if (name == "adjacent-only" || name == "adjacent") return PracticeScope::AdjacentOnly;
  if (name == "full-history" || name == "full") return PracticeScope::FullHistory;
  return std::nullopt;
}

EffectSize resource_switch_cost(CognitiveResource from, CognitiveResource to, const ResourceTransitionMatrix& matrix) {
  return matrix.at(from, to);
}

namespace detail {

unsigned rule_mask(const TaskTraits& prev, const TaskTraits& cur, bool practiced, const CostModel& model) {
  if (!model.rules_enabled) return 0;
  unsigned mask = 0;
  auto fire = [&](TransitionRule r, bool cond) {
    if (cond && model.rule_active(r)) mask |= 1U << static_cast<unsigned>(r);
  };
  const bool complexity_drop = cur.complexity < prev.complexity;
  fire(TransitionRule::Modality, prev.resource == cur.resource && prev.modality != cur.modality);
  fire(TransitionRule::RecentPractice, practiced);
  fire(TransitionRule::Familiarity, cur.familiarity > prev.familiarity);
  fire(TransitionRule::VoluntaryComplexityDrop, cur.voluntary && complexity_drop);
  fire(TransitionRule::InvoluntaryComplexityDrop, !cur.voluntary && complexity_drop);
  return mask;
}

std::int64_t transition_milli(const TaskTraits& prev, const TaskTraits& cur, bool practiced, const CostModel& model) {
  std::int64_t total = model.matrix.at(prev.resource, cur.resource).milli();
  const unsigned mask = rule_mask(prev, cur, practiced, model);
  for (std::size_t r = 0; r < kRuleCount; ++r)
    if ((mask >> r) & 1U) total += model.rule_costs[r].milli();
  return total;
}

}  // namespace detail

namespace {

bool shares_modality_or_resource(const Task& other, const Task& cur) {
  return other.modality == cur.modality || other.resource == cur.resource;
}

bool practiced(const Task& prev, const Task& cur, std::span<const Task> history, const CostModel& model) {
  if (shares_modality_or_resource(prev, cur)) return true;
  if (model.recent_practice_scope == PracticeScope::AdjacentOnly) return false;
  for (const auto& t : history)
    if (shares_modality_or_resource(t, cur)) return true;
  return false;
}

}  // namespace

std::vector<FiredRule> fired_rules(const Task& prev, const Task& cur, std::span<const Task> history,
                                   const CostModel& model) {
  const detail::TaskTraits p{prev.resource, 0, prev.voluntary, prev.familiarity, prev.complexity};
  const detail::TaskTraits c{cur.resource, prev.modality == cur.modality ? 0U : 1U, cur.voluntary, cur.familiarity,
                             cur.complexity};
  const unsigned mask = detail::rule_mask(p, c, practiced(prev, cur, history, model), model);
  std::vector<FiredRule> out;
  for (auto r : kAllRules)
    if ((mask >> static_cast<unsigned>(r)) & 1U) out.emplace_back(r, model.rule_cost(r));
  return out;
}

TransitionBreakdown transition_cost(const Task& prev, const Task& cur, std::span<const Task> history,
                                    const CostModel& model) {
  TransitionBreakdown b;
  b.from = prev.code;
  b.to = cur.code;
  b.resource_cost = resource_switch_cost(prev.resource, cur.resource, model.matrix);
  b.fired_rules = fired_rules(prev, cur, history, model);
  b.total = b.resource_cost;
  for (const auto& [_, cost] : b.fired_rules) b.total += cost;
  return b;
}

SequenceCost sequence_cost(std::span<const std::string> ordering, const Workflow& workflow, const CostModel& model) {
  if (auto why = linear_extension_violation(ordering, workflow)) throw DomainError("not a linear extension: " + *why);
  std::vector<Task> tasks;
  tasks.reserve(ordering.size());
  for (const auto& code : ordering) tasks.push_back(workflow.task(code));

  SequenceCost result;
  for (std::size_t i = 1; i < tasks.size(); ++i) {
    auto b = transition_cost(tasks[i - 1], tasks[i], std::span<const Task>(tasks.data(), i), model);
    result.total += b.total;
    result.breakdowns.push_back(std::move(b));
  }
  return result;
}

}  // namespace cogorder
