#pragma once

// Reference implementations written against the task model directly. They share
// no code with the library beyond the data types, so agreement is evidence.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cogorder/cost_model.hpp"
#include "cogorder/workflow.hpp"

namespace oracle {

using cogorder::CognitiveResource;
using cogorder::Task;
using cogorder::Workflow;

// Table of default resource switches in thousandths, rows from, columns to.
inline constexpr std::int64_t kMatrix[5][5] = {
    {0, 495, 495, 495, 157},     // VWM
    {495, 0, 495, 699, 699},     // PM
    {495, 495, 0, 482, 482},     // DR
    {495, 842, 1078, 0, 433},    // SR
    {307, 842, 1078, 354, 0},    // ER
};
inline constexpr std::int64_t kModality = 160;
inline constexpr std::int64_t kRecentPractice = 310;
inline constexpr std::int64_t kFamiliarity = 420;
inline constexpr std::int64_t kVoluntaryDrop = 2920;
inline constexpr std::int64_t kInvoluntaryDrop = 1630;

/// Cost of prev -> cur under the default table; `before` is every task done before cur.
inline std::int64_t transition(const Task& prev, const Task& cur, const std::vector<const Task*>& before,
                               bool full_history, bool rules = true) {
  std::int64_t c = kMatrix[static_cast<int>(prev.resource)][static_cast<int>(cur.resource)];
  if (!rules) return c;
  if (prev.resource == cur.resource && prev.modality != cur.modality) c += kModality;
  bool practiced = prev.modality == cur.modality || prev.resource == cur.resource;
  if (full_history)
    for (const Task* t : before)
      if (t->modality == cur.modality || t->resource == cur.resource) practiced = true;
  if (practiced) c += kRecentPractice;
  if (cur.familiarity > prev.familiarity) c += kFamiliarity;
  if (cur.complexity < prev.complexity) c += cur.voluntary ? kVoluntaryDrop : kInvoluntaryDrop;
  return c;
}

inline std::int64_t sequence(const std::vector<std::string>& order, const Workflow& wf, bool full_history = false,
                             bool rules = true) {
  std::int64_t total = 0;
  std::vector<const Task*> before;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Task& cur = wf.task(order[i]);
    if (i > 0) total += transition(*before.back(), cur, before, full_history, rules);
    before.push_back(&cur);
  }
  return total;
}

/// Prerequisite sets with variant groups already absent (concrete workflows only).
inline std::map<std::string, std::set<std::string>> prereqs(const Workflow& wf) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& t : wf.tasks()) out[t.code].insert(t.prerequisites.begin(), t.prerequisites.end());
  return out;
}

inline bool respects(const std::vector<std::string>& order, const Workflow& wf) {
  const auto pre = prereqs(wf);
  std::set<std::string> seen;
  for (const auto& c : order) {
    for (const auto& p : pre.at(c))
      if (!seen.count(p)) return false;
    seen.insert(c);
  }
  return true;
}

/// Counts linear extensions by recursing over the set of placed tasks.
inline std::uint64_t count_extensions(const Workflow& wf) {
  const auto pre = prereqs(wf);
  std::map<std::set<std::string>, std::uint64_t> memo;
  auto rec = [&](auto&& self, const std::set<std::string>& done) -> std::uint64_t {
    if (done.size() == pre.size()) return 1;
    if (auto it = memo.find(done); it != memo.end()) return it->second;
    std::uint64_t n = 0;
    for (const auto& [code, ps] : pre) {
      if (done.count(code)) continue;
      if (!std::includes(done.begin(), done.end(), ps.begin(), ps.end())) continue;
      auto next = done;
      next.insert(code);
      n += self(self, next);
    }
    return memo[done] = n;
  };
  return rec(rec, {});
}

struct Extreme {
  std::int64_t min = INT64_MAX;
  std::int64_t max = INT64_MIN;
  std::uint64_t feasible = 0;
};

/// Scans every permutation; only practical for n <= 9.
inline Extreme permutation_extremes(const Workflow& wf, bool full_history = false) {
  std::vector<std::string> order = wf.sorted_codes();
  Extreme e;
  do {
    if (!respects(order, wf)) continue;
    ++e.feasible;
    const auto c = sequence(order, wf, full_history);
    e.min = std::min(e.min, c);
    e.max = std::max(e.max, c);
  } while (std::next_permutation(order.begin(), order.end()));
  return e;
}

/// Random DAG over codes T00..; edges only go from lower to higher index of a shuffled order.
inline Workflow random_workflow(std::mt19937_64& rng, std::size_t n, double edge_p = 0.25,
                                std::size_t modalities = 3) {
  std::vector<std::string> codes;
  for (std::size_t i = 0; i < n; ++i) codes.push_back((i < 10 ? "T0" : "T") + std::to_string(i));
  std::vector<std::string> topo = codes;
  std::shuffle(topo.begin(), topo.end(), rng);
  std::uniform_int_distribution<int> res(0, 4), level(1, 5), mod(0, static_cast<int>(modalities) - 1);
  std::bernoulli_distribution coin(0.5), edge(edge_p);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    Task t;
    t.code = topo[i];
    t.name = "task " + topo[i];
    t.resource = static_cast<CognitiveResource>(res(rng));
    t.modality = "m" + std::to_string(mod(rng));
    t.voluntary = coin(rng);
    t.familiarity = level(rng);
    t.complexity = level(rng);
    for (std::size_t j = 0; j < i; ++j)
      if (edge(rng)) t.prerequisites.push_back(topo[j]);
    tasks.push_back(std::move(t));
  }
  std::shuffle(tasks.begin(), tasks.end(), rng);
  return Workflow(std::move(tasks));
}

/// Adds one edge that keeps the graph acyclic, or returns nullopt when the order is total.
inline std::optional<Workflow> add_random_edge(const Workflow& wf, std::mt19937_64& rng) {
  // Any extension is a topological order; an edge from earlier to later keeps acyclicity.
  std::vector<std::string> order;
  {
    const auto pre = prereqs(wf);
    std::set<std::string> done;
    while (order.size() < pre.size())
      for (const auto& [c, ps] : pre)
        if (!done.count(c) && std::includes(done.begin(), done.end(), ps.begin(), ps.end())) {
          order.push_back(c);
          done.insert(c);
        }
  }
  const auto pre = prereqs(wf);
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (!pre.at(order[j]).count(order[i])) candidates.emplace_back(i, j);
  if (candidates.empty()) return std::nullopt;
  const auto [i, j] = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  std::vector<Task> tasks = wf.tasks();
  for (auto& t : tasks)
    if (t.code == order[j]) t.prerequisites.push_back(order[i]);
  return Workflow(std::move(tasks));
}

inline std::vector<std::string> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("P" + std::to_string(i));
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace oracle
