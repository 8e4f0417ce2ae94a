#pragma once

#include <stdexcept>
#include <string>

namespace cogorder {

/// Raised for every domain-level rejection: malformed input, violated
/// preconditions, infeasible workflows, exceeded budgets.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cogorder
