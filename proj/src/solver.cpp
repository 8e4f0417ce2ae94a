#include "cogorder/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "cogorder/error.hpp"
#include "workflow_internal.hpp"

namespace cogorder {

std::string_view objective_name(Objective o) { return o == Objective::Minimize ? "min" : "max"; }
std::string_view backend_name(Backend b) { return b == Backend::BranchAndBound ? "bnb" : "exhaustive"; }

namespace {

using Clock = std::chrono::steady_clock;

/// Transition costs compiled to integer tables over code-ordered task indices.
///
/// cost(prev -> j | prefix) = base[prev][j] + (practiced ? practice : 0), where
/// `practiced` is the recent-practice condition over the configured scope. All
/// search happens on keys (sign * cost) so maximization is minimization of the
/// negated cost.
class CompiledProblem {
 public:
  CompiledProblem(const Workflow& workflow, const CostModel& model, Objective objective)
      : index_(workflow), sign_(objective == Objective::Minimize ? 1 : -1), full_history_(model.recent_practice_scope == PracticeScope::FullHistory) {
    const std::size_t n = index_.size();
    std::map<std::string, std::uint32_t> modality_ids;
    traits_.reserve(n);
    for (const auto& code : index_.codes()) {
      const Task& t = workflow.task(code);
      const auto [it, _] = modality_ids.emplace(t.modality, static_cast<std::uint32_t>(modality_ids.size()));
      traits_.push_back({t.resource, it->second, t.voluntary, t.familiarity, t.complexity});
    }
    practice_ = model.rule_active(TransitionRule::RecentPractice) ? model.rule_cost(TransitionRule::RecentPractice).milli() : 0;

    base_.assign(n, std::vector<std::int64_t>(n, 0));
    bound_.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        base_[i][j] = detail::transition_milli(traits_[i], traits_[j], false, model);
        const bool adjacent = detail::practiced_by(traits_[i], traits_[j]);
        const std::int64_t low = base_[i][j] + (adjacent ? practice_ : 0);
        // Full history can only add practice firings, so the adjacent cost is
        // a floor and "always practiced" a ceiling.
        const std::int64_t high = full_history_ ? base_[i][j] + practice_ : low;
        bound_[i][j] = sign_ > 0 ? low : -high;
      }
    }
  }

  const PrecedenceIndex& index() const { return index_; }
  std::size_t size() const { return index_.size(); }
  int sign() const { return sign_; }

  struct History {
    std::uint64_t modalities = 0;  // bit per modality id seen in the prefix
    std::uint32_t resources = 0;   // bit per resource seen in the prefix
  };

  History extend(History h, std::size_t j) const {
    h.modalities |= std::uint64_t{1} << traits_[j].modality;
    h.resources |= 1U << static_cast<unsigned>(traits_[j].resource);
    return h;
  }

  /// Key of the transition last -> j given the prefix history (which already
  /// includes `last`).
  std::int64_t step_key(std::size_t last, std::size_t j, const History& h) const {
    bool practiced;
    if (full_history_) {
      practiced = ((h.modalities >> traits_[j].modality) & 1U) ||
                  ((h.resources >> static_cast<unsigned>(traits_[j].resource)) & 1U);
    } else {
      practiced = detail::practiced_by(traits_[last], traits_[j]);
    }
    return sign_ * (base_[last][j] + (practiced ? practice_ : 0));
  }

  /// Admissible lower bound on the key still to be paid after a prefix ending
  /// at `last` with `done` completed: every remaining task needs one incoming
  /// transition from a task that may precede it.
  std::int64_t remaining_bound(std::uint64_t done, std::size_t last) const {
    const std::uint64_t remaining = index_.full_mask() & ~done;
    const std::uint64_t pool = remaining | (std::uint64_t{1} << last);
    std::int64_t total = 0;
    for (std::size_t j = 0; j < size(); ++j) {
      if (!((remaining >> j) & 1U)) continue;
      std::uint64_t cand = pool & ~(std::uint64_t{1} << j) & ~index_.descendants(j);
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      while (cand) {
        const auto i = static_cast<std::size_t>(__builtin_ctzll(cand));
        cand &= cand - 1;
        best = std::min(best, bound_[i][j]);
      }
      total += best;
    }
    return total;
  }

  std::int64_t sequence_key(const std::vector<std::size_t>& seq) const {
    std::int64_t key = 0;
    History h;
    for (std::size_t p = 0; p < seq.size(); ++p) {
      if (p > 0) key += step_key(seq[p - 1], seq[p], h);
      h = extend(h, seq[p]);
    }
    return key;
  }

 private:
  PrecedenceIndex index_;
  int sign_;
  bool full_history_;
  std::vector<detail::TaskTraits> traits_;
  std::int64_t practice_ = 0;
  std::vector<std::vector<std::int64_t>> base_;
  std::vector<std::vector<std::int64_t>> bound_;
};

struct Candidate {
  std::int64_t key;
  std::vector<std::size_t> seq;

  friend bool operator<(const Candidate& a, const Candidate& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.seq < b.seq;
  }
};

/// The k best candidates seen so far. Candidates must be offered in
/// ascending sequence order, so an equal key never displaces an incumbent.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}

  bool full() const { return items_.size() >= k_; }
  std::int64_t worst_key() const { return items_.back().key; }

  void offer(std::int64_t key, const std::vector<std::size_t>& seq) {
    if (full() && key >= worst_key()) return;
    Candidate c{key, seq};
    items_.insert(std::upper_bound(items_.begin(), items_.end(), c), std::move(c));
    if (items_.size() > k_) items_.pop_back();
  }

  /// Would a completion whose key is at least `bound` be rejected?
  bool dominated(std::int64_t bound) const { return full() && bound >= worst_key(); }

  std::vector<Candidate>& items() { return items_; }

 private:
  std::size_t k_;
  std::vector<Candidate> items_;
};

struct Worker {
  const CompiledProblem& problem;
  TopK best;
  SearchStats stats;
  std::vector<std::size_t> seq;

  Worker(const CompiledProblem& p, std::size_t k) : problem(p), best(k) {}

  void dfs(std::uint64_t done, std::int64_t key, CompiledProblem::History h) {
    ++stats.nodes;
    const auto& index = problem.index();
    if (done == index.full_mask()) {
      best.offer(key, seq);
      return;
    }
    const std::size_t last = seq.back();
    for (std::size_t j = 0; j < problem.size(); ++j) {
      if (!index.eligible(j, done)) continue;
      const std::uint64_t next_done = done | (std::uint64_t{1} << j);
      const std::int64_t next_key = key + problem.step_key(last, j, h);
      if (best.full() && best.dominated(next_key + problem.remaining_bound(next_done, j))) {
        ++stats.prunes;
        continue;
      }
      seq.push_back(j);
      dfs(next_done, next_key, problem.extend(h, j));
      seq.pop_back();
    }
  }

  void run_root(std::size_t first) {
    seq.assign(1, first);
    dfs(std::uint64_t{1} << first, 0, problem.extend({}, first));
  }
};

std::vector<Candidate> branch_and_bound(const CompiledProblem& problem, std::size_t k, unsigned workers,
                                        SearchStats& stats) {
  if (problem.size() == 0) return {Candidate{0, {}}};
  std::vector<std::size_t> roots;
  for (std::size_t j = 0; j < problem.size(); ++j)
    if (problem.index().eligible(j, 0)) roots.push_back(j);

  const unsigned count = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(roots.size())));
  std::vector<Worker> pool;
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(problem, k);

  auto run = [&](unsigned w) {
    for (std::size_t r = w; r < roots.size(); r += count) pool[w].run_root(roots[r]);
  };
  if (count == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < count; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  std::vector<Candidate> merged;
  for (auto& w : pool) {
    stats.nodes += w.stats.nodes;
    stats.prunes += w.stats.prunes;
    for (auto& c : w.best.items()) merged.push_back(std::move(c));
  }
  std::sort(merged.begin(), merged.end());
  if (merged.size() > k) merged.resize(k);
  return merged;
}

std::vector<Candidate> exhaustive(const CompiledProblem& problem, const Workflow& workflow, std::size_t k,
                                  std::uint64_t budget, SearchStats& stats) {
  const std::uint64_t count = detail::count_extensions_capped(problem.index(), budget);
  if (count > budget)
    throw DomainError("exhaustive search budget exceeded: more than " + std::to_string(budget) +
                      " linear extensions");
  TopK best(k);
  LinearExtensionStream stream(workflow);
  std::vector<std::size_t> seq;
  while (auto o = stream.next()) {
    seq.clear();
    for (const auto& code : *o) seq.push_back(*problem.index().index_of(code));
    best.offer(problem.sequence_key(seq), seq);
    ++stats.nodes;
  }
  return std::move(best.items());
}

Solution materialize(const Candidate& c, const CompiledProblem& problem, const Workflow& workflow,
                     const CostModel& model, const SearchStats& stats) {
  Solution s;
  for (auto i : c.seq) s.ordering.push_back(problem.index().codes()[i]);
  auto recomputed = sequence_cost(s.ordering, workflow, model);
  if (recomputed.total.milli() != problem.sign() * c.key)
    throw std::logic_error("search cost " + std::to_string(problem.sign() * c.key) +
                           " disagrees with sequence cost " + std::to_string(recomputed.total.milli()));
  s.total = recomputed.total;
  s.breakdowns = std::move(recomputed.breakdowns);
  s.stats = stats;
  return s;
}

}  // namespace

std::vector<Solution> solve(const SolveRequest& request) {
  if (request.k == 0) throw DomainError("k must be at least 1");
  const auto start = Clock::now();
  CompiledProblem problem(request.workflow, request.model, request.objective);
  SearchStats stats;
  std::vector<Candidate> found =
      request.backend == Backend::BranchAndBound
          ? branch_and_bound(problem, request.k, request.workers, stats)
          : exhaustive(problem, request.workflow, request.k, request.budget, stats);
  stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);

  std::vector<Solution> out;
  out.reserve(found.size());
  for (const auto& c : found) out.push_back(materialize(c, problem, request.workflow, request.model, stats));
  return out;
}

Solution brute_force(const Workflow& workflow, const CostModel& model, Objective objective, std::uint64_t budget) {
  const auto start = Clock::now();
  PrecedenceIndex index(workflow);
  const std::uint64_t count = detail::count_extensions_capped(index, budget);
  if (count > budget)
    throw DomainError("brute force budget exceeded: more than " + std::to_string(budget) + " linear extensions");

  std::optional<Solution> best;
  std::uint64_t evaluated = 0;
  LinearExtensionStream stream(workflow);
  while (auto o = stream.next()) {
    ++evaluated;
    auto cost = sequence_cost(*o, workflow, model);
    // Extensions arrive in ascending code order, so strict improvement keeps
    // the lexicographically smallest of equal totals.
    const bool better = !best || (objective == Objective::Minimize ? cost.total < best->total : cost.total > best->total);
    if (better) best = Solution{std::move(*o), cost.total, std::move(cost.breakdowns), {}};
  }
  best->stats.nodes = evaluated;
  best->stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return std::move(*best);
}

VariantComparison compare_variants(const Workflow& workflow, const CostModel& model, unsigned workers) {
  const auto& groups = workflow.variant_groups();
  if (groups.empty()) throw DomainError("workflow has no variant groups; use solve instead");
  require_valid(workflow);

  VariantComparison result;
  std::vector<std::size_t> pick(groups.size(), 0);
  for (;;) {
    Workflow concrete = workflow;
    VariantRow row;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& member = groups[g].members[pick[g]];
      concrete = instantiate_variant(concrete, groups[g].code, member);
      row.choice.emplace_back(groups[g].code, member);
    }
    SolveRequest req{concrete, model, Objective::Minimize, 1, Backend::BranchAndBound, workers};
    row.solution = std::move(solve(req).front());
    result.rows.push_back(std::move(row));

    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == groups[g].members.size()) pick[g++] = 0;
    if (g == groups.size()) break;
  }

  std::sort(result.rows.begin(), result.rows.end(), [](const VariantRow& a, const VariantRow& b) {
    if (a.solution.total != b.solution.total) return a.solution.total < b.solution.total;
    return a.choice < b.choice;
  });
  result.spread =
      EffectSize::from_milli(result.rows.back().solution.total.milli() - result.rows.front().solution.total.milli());
  return result;
}

}  // namespace cogorder
