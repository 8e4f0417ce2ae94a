#include "cogorder/workflow.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cogorder/error.hpp"
#include "workflow_internal.hpp"

namespace cogorder {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string_view resource_code(CognitiveResource r) {
  switch (r) {
    case CognitiveResource::VisualWorkingMemory: return "VWM";
    case CognitiveResource::ProceduralMemory: return "PM";
    case CognitiveResource::DeclarativeRecall: return "DR";
    case CognitiveResource::SemanticRecognition: return "SR";
    case CognitiveResource::EpisodicRecognition: return "ER";
  }
  return "?";
}

std::optional<CognitiveResource> parse_resource(std::string_view text) {
  static const std::unordered_map<std::string, CognitiveResource> kNames = {
      {"vwm", CognitiveResource::VisualWorkingMemory},
      {"visual working memory", CognitiveResource::VisualWorkingMemory},
      {"pm", CognitiveResource::ProceduralMemory},
      {"pwm", CognitiveResource::ProceduralMemory},
      {"procedural memory", CognitiveResource::ProceduralMemory},
      {"dr", CognitiveResource::DeclarativeRecall},
      {"declarative recall", CognitiveResource::DeclarativeRecall},
      {"sr", CognitiveResource::SemanticRecognition},
      {"semantic recognition", CognitiveResource::SemanticRecognition},
      {"er", CognitiveResource::EpisodicRecognition},
      {"episodic recognition", CognitiveResource::EpisodicRecognition},
      {"episodic", CognitiveResource::EpisodicRecognition},
  };
  const auto it = kNames.find(lower(trim(text)));
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

std::string normalize_modality(std::string_view label) { return lower(trim(label)); }

// Workflow -------------------------------------------------------------------

Workflow::Workflow(std::vector<Task> tasks, std::vector<VariantGroup> groups)
    : tasks_(std::move(tasks)), groups_(std::move(groups)) {
  for (std::size_t i = 0; i < tasks_.size(); ++i) index_.emplace(tasks_[i].code, i);
}

const Task* Workflow::find_task(std::string_view code) const {
  const auto it = index_.find(code);
  return it == index_.end() ? nullptr : &tasks_[it->second];
}

const VariantGroup* Workflow::find_group(std::string_view code) const {
  for (const auto& g : groups_)
    if (g.code == code) return &g;
  return nullptr;
}

const Task& Workflow::task(std::string_view code) const {
  if (const Task* t = find_task(code)) return *t;
  throw DomainError("unknown task code '" + std::string(code) + "'");
}

std::vector<std::string> Workflow::sorted_codes() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [code, _] : index_) out.push_back(code);
  return out;
}

// Validation -----------------------------------------------------------------

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyCode: return "empty-code";
    case ViolationKind::DuplicateCode: return "duplicate-code";
    case ViolationKind::PropertyOutOfRange: return "property-out-of-range";
    case ViolationKind::SelfPrerequisite: return "self-prerequisite";
    case ViolationKind::UnknownPrerequisite: return "unknown-prerequisite";
    case ViolationKind::GroupCodeCollision: return "group-code-collision";
    case ViolationKind::EmptyGroup: return "empty-group";
    case ViolationKind::UnknownGroupMember: return "unknown-group-member";
    case ViolationKind::MemberInMultipleGroups: return "member-in-multiple-groups";
    case ViolationKind::DirectMemberReference: return "direct-member-reference";
    case ViolationKind::Cycle: return "cycle";
  }
  return "?";
}

namespace {

void find_cycles(const Workflow& wf, std::vector<Violation>& out) {
  // Edges run prerequisite -> dependent; a group prerequisite contributes an
  // edge from each of its members.
  const auto codes = wf.sorted_codes();
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& code : codes) succ[code];
  for (const auto& code : codes) {
    const Task& t = wf.task(code);
    for (const auto& p : t.prerequisites) {
      if (wf.find_task(p)) {
        succ[p].insert(t.code);
      } else if (const VariantGroup* g = wf.find_group(p)) {
        for (const auto& m : g->members)
          if (wf.find_task(m)) succ[m].insert(t.code);
      }
    }
  }

  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  for (const auto& c : codes) mark[c] = Mark::White;
  std::vector<std::string> stack;
  std::set<std::set<std::string>> seen;

  std::function<void(const std::string&)> visit = [&](const std::string& u) {
    mark[u] = Mark::Grey;
    stack.push_back(u);
    for (const auto& v : succ[u]) {
      if (mark[v] == Mark::Grey) {
        const auto start = std::find(stack.begin(), stack.end(), v);
        std::vector<std::string> path(start, stack.end());
        std::set<std::string> key(path.begin(), path.end());
        if (seen.insert(key).second) {
          std::string msg = "precedence cycle: " + join(path, " -> ") + " -> " + v;
          out.push_back({ViolationKind::Cycle, std::move(msg), std::move(path)});
        }
      } else if (mark[v] == Mark::White) {
        visit(v);
      }
    }
    stack.pop_back();
    mark[u] = Mark::Black;
  };
  for (const auto& c : codes)
    if (mark[c] == Mark::White) visit(c);
}

}  // namespace

ValidationReport validate_workflow(const Workflow& workflow) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg, std::vector<std::string> codes) {
    report.violations.push_back({kind, std::move(msg), std::move(codes)});
  };

  std::set<std::string> member_codes;
  std::map<std::string, int> member_groups;
  for (const auto& g : workflow.variant_groups())
    for (const auto& m : g.members) {
      member_codes.insert(m);
      ++member_groups[m];
    }

  std::set<std::string> seen_codes;
  for (const auto& t : workflow.tasks()) {
    if (t.code.empty()) add(ViolationKind::EmptyCode, "task with empty code (name '" + t.name + "')", {});
    if (!seen_codes.insert(t.code).second)
      add(ViolationKind::DuplicateCode, "duplicate task code '" + t.code + "'", {t.code});
    if (t.familiarity < 1 || t.familiarity > 5)
      add(ViolationKind::PropertyOutOfRange,
          "task '" + t.code + "': familiarity " + std::to_string(t.familiarity) + " outside [1,5]", {t.code});
    if (t.complexity < 1 || t.complexity > 5)
      add(ViolationKind::PropertyOutOfRange,
          "task '" + t.code + "': complexity " + std::to_string(t.complexity) + " outside [1,5]", {t.code});
    for (const auto& p : t.prerequisites) {
      if (p == t.code) {
        add(ViolationKind::SelfPrerequisite, "task '" + t.code + "' lists itself as a prerequisite", {t.code});
      } else if (!workflow.find_task(p) && !workflow.find_group(p)) {
        add(ViolationKind::UnknownPrerequisite, "task '" + t.code + "': unknown prerequisite '" + p + "'",
            {t.code, p});
      } else if (member_codes.count(p)) {
        add(ViolationKind::DirectMemberReference,
            "task '" + t.code + "' references variant member '" + p + "' directly; use its group code",
            {t.code, p});
      }
    }
  }

  std::set<std::string> group_codes;
  for (const auto& g : workflow.variant_groups()) {
    if (g.code.empty()) add(ViolationKind::EmptyCode, "variant group with empty code", {});
    if (!group_codes.insert(g.code).second)
      add(ViolationKind::DuplicateCode, "duplicate variant group code '" + g.code + "'", {g.code});
    if (workflow.find_task(g.code))
      add(ViolationKind::GroupCodeCollision, "variant group code '" + g.code + "' is also a task code", {g.code});
    if (g.members.empty()) add(ViolationKind::EmptyGroup, "variant group '" + g.code + "' has no members", {g.code});
    for (const auto& m : g.members)
      if (!workflow.find_task(m))
        add(ViolationKind::UnknownGroupMember, "variant group '" + g.code + "': unknown member '" + m + "'",
            {g.code, m});
  }
  for (const auto& [m, n] : member_groups)
    if (n > 1) add(ViolationKind::MemberInMultipleGroups, "task '" + m + "' belongs to several variant groups", {m});

  find_cycles(workflow, report.violations);
  return report;
}

void require_valid(const Workflow& workflow) {
  const auto report = validate_workflow(workflow);
  if (report.ok()) return;
  std::string msg = "invalid workflow: " + report.violations.front().message;
  if (report.violations.size() > 1) msg += " (+" + std::to_string(report.violations.size() - 1) + " more)";
  throw DomainError(msg);
}

Workflow instantiate_variant(const Workflow& workflow, std::string_view group, std::string_view member) {
  if (workflow.variant_groups().empty())
    throw DomainError("workflow has no variant groups; cannot instantiate '" + std::string(group) + "'");
  const VariantGroup* g = workflow.find_group(group);
  if (!g) throw DomainError("unknown variant group '" + std::string(group) + "'");
  if (std::find(g->members.begin(), g->members.end(), member) == g->members.end())
    throw DomainError("'" + std::string(member) + "' is not a member of variant group '" + g->code + "'");

  std::vector<Task> tasks;
  for (const auto& t : workflow.tasks()) {
    const bool dropped =
        t.code != member && std::find(g->members.begin(), g->members.end(), t.code) != g->members.end();
    if (dropped) continue;
    Task copy = t;
    for (auto& p : copy.prerequisites)
      if (p == g->code) p = std::string(member);
    tasks.push_back(std::move(copy));
  }
  std::vector<VariantGroup> groups;
  for (const auto& other : workflow.variant_groups())
    if (other.code != g->code) groups.push_back(other);
  return Workflow(std::move(tasks), std::move(groups));
}

std::optional<std::string> linear_extension_violation(std::span<const std::string> ordering,
                                                      const Workflow& workflow) {
  if (!workflow.is_concrete()) {
    std::vector<std::string> groups;
    for (const auto& g : workflow.variant_groups()) groups.push_back(g.code);
    return "workflow has unresolved variant groups: " + join(groups, ", ");
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (!workflow.find_task(ordering[i])) return "unknown task '" + ordering[i] + "' at position " + std::to_string(i);
    if (!position.emplace(ordering[i], i).second) return "task '" + ordering[i] + "' appears more than once";
  }
  for (const auto& code : workflow.sorted_codes())
    if (!position.count(code)) return "task '" + code + "' is missing from the ordering";
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    const Task& t = workflow.task(ordering[i]);
    for (const auto& p : t.prerequisites) {
      const auto it = position.find(p);
      if (it == position.end()) return "prerequisite '" + p + "' of '" + t.code + "' is not a task";
      if (it->second > i) return "'" + p + "' must precede '" + t.code + "'";
    }
  }
  return std::nullopt;
}

bool is_linear_extension(std::span<const std::string> ordering, const Workflow& workflow) {
  return !linear_extension_violation(ordering, workflow).has_value();
}

// PrecedenceIndex --------------------------------------------------------------

PrecedenceIndex::PrecedenceIndex(const Workflow& workflow) {
  if (!workflow.is_concrete())
    throw DomainError("workflow has unresolved variant groups; instantiate each group first");
  require_valid(workflow);
  if (workflow.size() > kMaxTasks)
    throw DomainError("workflow has " + std::to_string(workflow.size()) + " tasks; at most " +
                      std::to_string(kMaxTasks) + " are supported");

  codes_ = workflow.sorted_codes();
  const std::size_t n = codes_.size();
  prereq_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& p : workflow.task(codes_[i]).prerequisites) prereq_[i] |= std::uint64_t{1} << *index_of(p);
  full_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  // Transitive prerequisites by fixpoint (the graph is acyclic).
  std::vector<std::uint64_t> ancestors = prereq_;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = ancestors[i];
      for (std::size_t j = 0; j < n; ++j)
        if ((ancestors[i] >> j) & 1U) acc |= ancestors[j];
      if (acc != ancestors[i]) {
        ancestors[i] = acc;
        changed = true;
      }
    }
  }
  desc_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((ancestors[i] >> j) & 1U) desc_[j] |= std::uint64_t{1} << i;
}

std::optional<std::size_t> PrecedenceIndex::index_of(std::string_view code) const {
  const auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

// Enumeration ----------------------------------------------------------------

LinearExtensionStream::LinearExtensionStream(const Workflow& workflow, std::optional<std::uint64_t> limit)
    : index_(workflow), limit_(limit) {}

bool LinearExtensionStream::advance() {
  const std::size_t n = index_.size();
  auto complete = [&] {
    while (chosen_.size() < n) {
      std::size_t j = 0;
      while (!index_.eligible(j, done_)) ++j;  // an eligible task always exists in an acyclic DAG
      chosen_.push_back(j);
      done_ |= std::uint64_t{1} << j;
    }
  };
  if (!started_) {
    started_ = true;
    complete();
    return true;
  }
  while (!chosen_.empty()) {
    const std::size_t last = chosen_.back();
    chosen_.pop_back();
    done_ &= ~(std::uint64_t{1} << last);
    for (std::size_t j = last + 1; j < n; ++j) {
      if (index_.eligible(j, done_)) {
        chosen_.push_back(j);
        done_ |= std::uint64_t{1} << j;
        complete();
        return true;
      }
    }
  }
  return false;
}

std::optional<Ordering> LinearExtensionStream::next() {
  if (exhausted_ || (limit_ && produced_ >= *limit_)) return std::nullopt;
  if (!advance()) {
    exhausted_ = true;
    return std::nullopt;
  }
  ++produced_;
  Ordering out;
  out.reserve(chosen_.size());
  for (std::size_t i : chosen_) out.push_back(index_.codes()[i]);
  return out;
}

std::vector<Ordering> enumerate_linear_extensions(const Workflow& workflow, std::optional<std::uint64_t> limit) {
  LinearExtensionStream stream(workflow, limit);
  std::vector<Ordering> out;
  while (auto o = stream.next()) out.push_back(std::move(*o));
  return out;
}

namespace detail {

std::uint64_t count_extensions_capped(const PrecedenceIndex& index, std::uint64_t cap) {
  // Every completed subset is a prefix of some extension, so more than
  // cap * (n + 1) distinct subsets already implies more than cap extensions.
  const std::uint64_t n = index.size();
  const std::uint64_t state_limit =
      cap > std::numeric_limits<std::uint64_t>::max() / (n + 1) ? std::numeric_limits<std::uint64_t>::max()
                                                                : cap * (n + 1) + 1;
  const std::uint64_t over = cap == std::numeric_limits<std::uint64_t>::max() ? cap : cap + 1;
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  bool overflowed = false;

  std::function<std::uint64_t(std::uint64_t)> count = [&](std::uint64_t done) -> std::uint64_t {
    if (done == index.full_mask()) return 1;
    if (overflowed) return over;
    if (const auto it = memo.find(done); it != memo.end()) return it->second;
    if (memo.size() >= state_limit) {
      overflowed = true;
      return over;
    }
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (!index.eligible(j, done)) continue;
      const std::uint64_t sub = count(done | (std::uint64_t{1} << j));
      total = sub > over - total ? over : total + sub;
    }
    memo.emplace(done, total);
    return total;
  };
  const std::uint64_t result = count(0);
  return overflowed ? over : std::min(result, over);
}

}  // namespace detail

std::uint64_t count_linear_extensions(const Workflow& workflow) {
  PrecedenceIndex index(workflow);
  const auto max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t n = detail::count_extensions_capped(index, max - 1);
  if (n == max) throw DomainError("linear extension count does not fit in 64 bits");
  return n;
}

}  // namespace cogorder
