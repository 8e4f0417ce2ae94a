#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cogorder/cost_model.hpp"
#include "cogorder/workflow.hpp"

namespace cogorder {

/// Every variable takes a distinct value.
struct AllDifferent {
  friend bool operator==(AllDifferent, AllDifferent) = default;
};

/// The variable holding `after` never precedes the variable holding `before`.
/// Decomposed pairwise over every (earlier, later) variable pair.
struct OrderPair {
  std::size_t before;
  std::size_t after;
  friend bool operator==(OrderPair, OrderPair) = default;
};

using HardConstraint = std::variant<AllDifferent, OrderPair>;

/// One value per variable; nullopt marks an unassigned variable.
using Assignment = std::vector<std::optional<std::size_t>>;

/// Weighted CSP over step variables x_1..x_n with task values 0..d-1.
///
/// Costs live in the valuation structure (nonnegative thousandths, +, <);
/// hard constraints evaluate to infinity when violated, reported here as
/// nullopt. The single soft constraint is the d-by-d table applied to every
/// adjacent variable pair.
class WcspInstance {
 public:
  WcspInstance(std::vector<std::string> value_codes, std::vector<HardConstraint> hard,
               std::vector<std::vector<std::int64_t>> binary_costs);

  std::size_t variable_count() const { return value_codes_.size(); }
  std::size_t domain_size() const { return value_codes_.size(); }

  /// Value -> task code table, ascending by code.
  const std::vector<std::string>& value_codes() const { return value_codes_; }
  std::optional<std::size_t> value_of(const std::string& code) const;

  const std::vector<HardConstraint>& hard_constraints() const { return hard_; }
  std::size_t order_pair_count() const;

  std::int64_t binary_cost(std::size_t a, std::size_t b) const { return binary_costs_[a][b]; }

  /// Human-readable listing of variables, constraints, and the cost table.
  std::string dump() const;

 private:
  std::vector<std::string> value_codes_;
  std::vector<HardConstraint> hard_;
  std::vector<std::vector<std::int64_t>> binary_costs_;
};

/// Encodes a concrete workflow. Throws DomainError for a full-history model,
/// whose costs cannot be expressed over adjacent pairs.
WcspInstance encode_workflow(const Workflow& workflow, const CostModel& model);

/// Total cost in thousandths, or nullopt when a hard constraint is violated.
/// Throws DomainError if the assignment is incomplete or mis-sized.
std::optional<std::int64_t> evaluate_assignment(const WcspInstance& instance, const Assignment& assignment);

/// Maps an ordering of task codes onto the instance's values.
Assignment assignment_from_ordering(const WcspInstance& instance, const Ordering& ordering);

}  // namespace cogorder
