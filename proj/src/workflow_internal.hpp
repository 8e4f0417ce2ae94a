#pragma once

#include <cstdint>

#include "cogorder/workflow.hpp"

namespace cogorder {

/// Throws DomainError carrying the first violation.
void require_valid(const Workflow& workflow);

namespace detail {

/// Exact extension count when it is <= cap, otherwise cap + 1.
std::uint64_t count_extensions_capped(const PrecedenceIndex& index, std::uint64_t cap);

}  // namespace detail

}  // namespace cogorder
