#include "cogorder/wcsp.hpp"

#include <algorithm>
#include <sstream>

#include "cogorder/error.hpp"

namespace cogorder {

WcspInstance::WcspInstance(std::vector<std::string> value_codes, std::vector<HardConstraint> hard,
                           std::vector<std::vector<std::int64_t>> binary_costs)
    : value_codes_(std::move(value_codes)), hard_(std::move(hard)), binary_costs_(std::move(binary_costs)) {
  const std::size_t d = value_codes_.size();
  if (binary_costs_.size() != d)
    throw DomainError("binary cost table must be " + std::to_string(d) + "x" + std::to_string(d));
  for (const auto& row : binary_costs_)
    if (row.size() != d) throw DomainError("binary cost table must be square");
  for (const auto& c : hard_) {
    if (const auto* op = std::get_if<OrderPair>(&c)) {
      if (op->before >= d || op->after >= d || op->before == op->after)
        throw DomainError("order pair values must be distinct domain values");
    }
  }
}

std::optional<std::size_t> WcspInstance::value_of(const std::string& code) const {
  const auto it = std::lower_bound(value_codes_.begin(), value_codes_.end(), code);
  if (it == value_codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - value_codes_.begin());
}

std::size_t WcspInstance::order_pair_count() const {
  return static_cast<std::size_t>(
      std::count_if(hard_.begin(), hard_.end(), [](const HardConstraint& c) { return std::holds_alternative<OrderPair>(c); }));
}

std::string WcspInstance::dump() const {
  std::ostringstream os;
  const std::size_t n = variable_count();
  os << "variables: x1..x" << n << "\n";
  os << "domain: 0.." << (n == 0 ? 0 : n - 1) << "\n";
  for (std::size_t v = 0; v < n; ++v) os << "  " << v << " = " << value_codes_[v] << "\n";
  os << "hard constraints:\n";
  for (const auto& c : hard_) {
    if (std::holds_alternative<AllDifferent>(c)) {
      os << "  AllDifferent(x1..x" << n << ")\n";
    } else {
      const auto& op = std::get<OrderPair>(c);
      os << "  Order(before=" << op.before << " " << value_codes_[op.before] << ", after=" << op.after << " "
         << value_codes_[op.after] << ")\n";
    }
  }
  os << "binary costs (thousandths, row=earlier step, column=later step):\n";
  for (std::size_t a = 0; a < n; ++a) {
    os << "  " << value_codes_[a] << ":";
    for (std::size_t b = 0; b < n; ++b) os << " " << binary_costs_[a][b];
    os << "\n";
  }
  return os.str();
}

WcspInstance encode_workflow(const Workflow& workflow, const CostModel& model) {
  if (model.recent_practice_scope == PracticeScope::FullHistory)
    throw DomainError(
        "full-history practice scope cannot be encoded as adjacent binary costs; use the sequence-search backend");
  PrecedenceIndex index(workflow);
  const auto& codes = index.codes();
  const std::size_t d = codes.size();

  std::vector<HardConstraint> hard;
  hard.emplace_back(AllDifferent{});
  for (std::size_t v = 0; v < d; ++v)
    for (const auto& p : workflow.task(codes[v]).prerequisites) hard.emplace_back(OrderPair{*index.index_of(p), v});

  std::vector<std::vector<std::int64_t>> costs(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t a = 0; a < d; ++a) {
    const Task& ta = workflow.task(codes[a]);
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b) continue;
      costs[a][b] = transition_cost(ta, workflow.task(codes[b]), std::span<const Task>(&ta, 1), model).total.milli();
    }
  }
  return WcspInstance(codes, std::move(hard), std::move(costs));
}

std::optional<std::int64_t> evaluate_assignment(const WcspInstance& instance, const Assignment& assignment) {
  const std::size_t n = instance.variable_count();
  if (assignment.size() != n)
    throw DomainError("assignment has " + std::to_string(assignment.size()) + " variables, expected " +
                      std::to_string(n));
  std::vector<std::size_t> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!assignment[i]) throw DomainError("assignment is incomplete: x" + std::to_string(i + 1) + " is unassigned");
    if (*assignment[i] >= instance.domain_size())
      throw DomainError("value " + std::to_string(*assignment[i]) + " outside the domain");
    values[i] = *assignment[i];
  }

  for (const auto& c : instance.hard_constraints()) {
    if (std::holds_alternative<AllDifferent>(c)) {
      std::vector<bool> used(instance.domain_size(), false);
      for (auto v : values) {
        if (used[v]) return std::nullopt;
        used[v] = true;
      }
    } else {
      // (x_i != after) | (x_j != before) for every i < j.
      const auto& op = std::get<OrderPair>(c);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (values[i] == op.after && values[j] == op.before) return std::nullopt;
    }
  }

  std::int64_t total = 0;
  for (std::size_t i = 1; i < n; ++i) total += instance.binary_cost(values[i - 1], values[i]);
  return total;
}

Assignment assignment_from_ordering(const WcspInstance& instance, const Ordering& ordering) {
  Assignment a;
  a.reserve(ordering.size());
  for (const auto& code : ordering) {
    const auto v = instance.value_of(code);
    if (!v) throw DomainError("task '" + code + "' is not a value of this instance");
    a.push_back(*v);
  }
  return a;
}

}  // namespace cogorder
