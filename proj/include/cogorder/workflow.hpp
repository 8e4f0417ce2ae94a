#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogorder {

/// Dominant cognitive mechanism a task engages.
enum class CognitiveResource : std::uint8_t {
  VisualWorkingMemory = 0,  // VWM
  ProceduralMemory = 1,     // PM
  DeclarativeRecall = 2,    // DR
  SemanticRecognition = 3,  // SR
  EpisodicRecognition = 4,  // ER
};

inline constexpr std::size_t kResourceCount = 5;

/// Short label: "VWM", "PM", "DR", "SR" or "ER".
std::string_view resource_code(CognitiveResource r);

/// Accepts the short codes (case-insensitive), "PWM" as an alias of PM, and
/// the long descriptive names used in task tables ("Visual working memory",
/// "Episodic recognition", plain "Episodic", ...). Returns nullopt otherwise.
std::optional<CognitiveResource> parse_resource(std::string_view text);

/// Lowercases and trims; modality labels compare equal iff their normalized
/// forms are identical.
std::string normalize_modality(std::string_view label);

struct Task {
  std::string code;
  std::string name;
  CognitiveResource resource = CognitiveResource::VisualWorkingMemory;
  std::string modality;  // normalized
  bool voluntary = false;
  int familiarity = 1;  // 1..5
  int complexity = 1;   // 1..5
  std::vector<std::string> prerequisites;  // task codes or variant-group codes

  friend bool operator==(const Task&, const Task&) = default;
};

/// Interchangeable alternatives for one abstract step (e.g. AUTH).
struct VariantGroup {
  std::string code;
  std::vector<std::string> members;

  friend bool operator==(const VariantGroup&, const VariantGroup&) = default;
};

using Ordering = std::vector<std::string>;

/// Immutable task set with precedence constraints and variant groups.
///
/// Tasks keep their insertion order for serialization; lookups go through a
/// code index built at construction. Duplicate codes are retained so that
/// validation can report them (lookups resolve to the first occurrence).
class Workflow {
 public:
  Workflow() = default;
  Workflow(std::vector<Task> tasks, std::vector<VariantGroup> groups = {});

  const std::vector<Task>& tasks() const { return tasks_; }
  const std::vector<VariantGroup>& variant_groups() const { return groups_; }

  std::size_t size() const { return tasks_.size(); }
  bool is_concrete() const { return groups_.empty(); }

  const Task* find_task(std::string_view code) const;
  const VariantGroup* find_group(std::string_view code) const;

  /// Throws DomainError for an unknown code.
  const Task& task(std::string_view code) const;

  /// Task codes in ascending order (unique).
  std::vector<std::string> sorted_codes() const;

  friend bool operator==(const Workflow& a, const Workflow& b) {
    return a.tasks_ == b.tasks_ && a.groups_ == b.groups_;
  }

 private:
  std::vector<Task> tasks_;
  std::vector<VariantGroup> groups_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

enum class ViolationKind {
  EmptyCode,
  DuplicateCode,
  PropertyOutOfRange,
  SelfPrerequisite,
  UnknownPrerequisite,
  GroupCodeCollision,
  EmptyGroup,
  UnknownGroupMember,
  MemberInMultipleGroups,
  DirectMemberReference,
  Cycle,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<std::string> codes;  // offending codes; for cycles, the path
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant. Violations are reported, never thrown.
ValidationReport validate_workflow(const Workflow& workflow);

/// Resolves a variant group to one member: other members are dropped and
/// every prerequisite naming the group is rewritten to the member.
Workflow instantiate_variant(const Workflow& workflow, std::string_view group, std::string_view member);

/// First reason the ordering fails to be a linear extension, or nullopt.
std::optional<std::string> linear_extension_violation(std::span<const std::string> ordering,
                                                      const Workflow& workflow);

bool is_linear_extension(std::span<const std::string> ordering, const Workflow& workflow);

/// Bitmask view of a concrete, acyclic workflow. Task indices follow
/// ascending code order. Supports up to 64 tasks.
class PrecedenceIndex {
 public:
  static constexpr std::size_t kMaxTasks = 64;

  /// Throws DomainError if the workflow is not concrete, fails validation, or
  /// is larger than kMaxTasks.
  explicit PrecedenceIndex(const Workflow& workflow);

  std::size_t size() const { return codes_.size(); }
  const std::vector<std::string>& codes() const { return codes_; }
  std::uint64_t prerequisites(std::size_t i) const { return prereq_[i]; }
  /// Tasks that transitively require task i.
  std::uint64_t descendants(std::size_t i) const { return desc_[i]; }
  std::uint64_t full_mask() const { return full_; }
  std::optional<std::size_t> index_of(std::string_view code) const;

  bool eligible(std::size_t i, std::uint64_t done) const {
    return ((done >> i) & 1U) == 0 && (prereq_[i] & ~done) == 0;
  }

 private:
  std::vector<std::string> codes_;
  std::vector<std::uint64_t> prereq_;
  std::vector<std::uint64_t> desc_;
  std::uint64_t full_ = 0;
};

/// Lazily yields every linear extension of a concrete workflow in ascending
/// lexicographic order of code sequences. Single consumer.
class LinearExtensionStream {
 public:
  explicit LinearExtensionStream(const Workflow& workflow, std::optional<std::uint64_t> limit = std::nullopt);

  std::optional<Ordering> next();
  std::uint64_t produced() const { return produced_; }

 private:
  bool advance();

  PrecedenceIndex index_;
  std::optional<std::uint64_t> limit_;
  std::uint64_t produced_ = 0;
  std::vector<std::size_t> chosen_;
  std::uint64_t done_ = 0;
  bool started_ = false;
  bool exhausted_ = false;
};

/// Collects the stream into a vector.
std::vector<Ordering> enumerate_linear_extensions(const Workflow& workflow,
                                                  std::optional<std::uint64_t> limit = std::nullopt);

/// Number of linear extensions, by memoized counting over completed subsets.
std::uint64_t count_linear_extensions(const Workflow& workflow);

}  // namespace cogorder
