#include "cogorder/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cogorder/error.hpp"

namespace cogorder {

PositionVector positions(std::span<const std::string> ordering) {
  PositionVector pos;
  for (std::size_t i = 0; i < ordering.size(); ++i)
    if (!pos.emplace(ordering[i], i).second) throw DomainError("task '" + ordering[i] + "' appears more than once");
  return pos;
}

namespace {

void require_same_tasks(const PositionVector& a, const PositionVector& b) {
  std::vector<std::string> diff;
  for (const auto& [code, _] : a)
    if (!b.count(code)) diff.push_back(code);
  for (const auto& [code, _] : b)
    if (!a.count(code)) diff.push_back(code);
  if (diff.empty()) return;
  std::sort(diff.begin(), diff.end());
  std::string msg = "orderings cover different task sets; symmetric difference:";
  for (const auto& c : diff) msg += " " + c;
  throw DomainError(msg);
}

}  // namespace

double ordering_distance(std::span<const std::string> a, std::span<const std::string> b) {
  const auto pa = positions(a);
  const auto pb = positions(b);
  require_same_tasks(pa, pb);
  std::uint64_t sum = 0;
  for (const auto& [code, i] : pa) {
    const auto j = pb.at(code);
    const std::uint64_t d = i > j ? i - j : j - i;
    sum += d * d;
  }
  return std::sqrt(static_cast<double>(sum));
}

Ordering consensus_ordering(std::span<const Ordering> orderings) {
  if (orderings.empty()) throw DomainError("consensus needs at least one ordering");
  const auto reference = positions(orderings.front());
  for (const auto& o : orderings.subspan(1)) require_same_tasks(reference, positions(o));

  const std::size_t n = orderings.front().size();
  std::vector<std::string> codes;
  for (const auto& [code, _] : reference) codes.push_back(code);  // ascending
  std::map<std::string, std::size_t> code_index;
  for (std::size_t c = 0; c < codes.size(); ++c) code_index[codes[c]] = c;

  // freq[position][task], position_sum[task]
  std::vector<std::vector<std::size_t>> freq(n, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> position_sum(n, 0);
  for (const auto& o : orderings) {
    for (std::size_t p = 0; p < n; ++p) {
      const auto c = code_index.at(o[p]);
      ++freq[p][c];
      position_sum[c] += p;
    }
  }

  std::vector<std::optional<std::size_t>> slot(n);
  std::vector<bool> used(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    std::optional<std::size_t> pick;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || freq[p][c] == 0) continue;
      if (!pick || freq[p][c] > freq[p][*pick]) pick = c;
    }
    if (pick) {
      slot[p] = pick;
      used[*pick] = true;
    }
  }

  std::vector<std::size_t> leftover;
  for (std::size_t c = 0; c < n; ++c)
    if (!used[c]) leftover.push_back(c);
  // Equal counts, so comparing position sums compares means.
  std::stable_sort(leftover.begin(), leftover.end(),
                   [&](std::size_t x, std::size_t y) { return position_sum[x] < position_sum[y]; });
  auto next = leftover.begin();
  for (auto& s : slot)
    if (!s) s = *next++;

  Ordering out;
  out.reserve(n);
  for (const auto& s : slot) out.push_back(codes[*s]);
  return out;
}

std::vector<ReportRow> transition_report(const Solution& solution) {
  std::vector<ReportRow> rows;
  rows.reserve(solution.breakdowns.size());
  EffectSize running;
  for (const auto& b : solution.breakdowns) {
    running += b.total;
    rows.push_back({b.from, b.to, b.resource_cost, b.fired_rules, b.total, running});
  }
  return rows;
}

}  // namespace cogorder
