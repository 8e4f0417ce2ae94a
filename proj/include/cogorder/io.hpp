#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogorder/analysis.hpp"
#include "cogorder/cost_model.hpp"
#include "cogorder/solver.hpp"
#include "cogorder/workflow.hpp"

namespace cogorder::io {

/// Environment variable naming a cost-model file used when none is given.
inline constexpr const char* kCostModelEnv = "COGORDER_COST_MODEL";

struct LoadOptions {
  /// Reject unknown keys instead of collecting a warning.
  bool strict = false;
};

struct WorkflowDocument {
  Workflow workflow;
  std::map<std::string, Ordering> known_orderings;
  std::vector<std::string> warnings;
};

/// Parses and validates a workflow document. Throws DomainError with the
/// source name and line or field path on failure.
WorkflowDocument parse_workflow(std::string_view text, std::string_view source = "<input>",
                                const LoadOptions& options = {});
WorkflowDocument load_workflow(const std::filesystem::path& path, const LoadOptions& options = {});

std::string serialize_workflow(const Workflow& workflow, const std::map<std::string, Ordering>& known_orderings = {});

/// Empty or whitespace-only text yields the default model.
/// Unknown keys are appended to `warnings` (when given) unless strict.
CostModel parse_cost_model(std::string_view text, std::string_view source = "<input>",
                           const LoadOptions& options = {}, std::vector<std::string>* warnings = nullptr);
/// With no path, falls back to $COGORDER_COST_MODEL, then to defaults.
CostModel load_cost_model(const std::optional<std::filesystem::path>& path, const LoadOptions& options = {},
                          std::vector<std::string>* warnings = nullptr);

std::string serialize_cost_model(const CostModel& model);

/// Comma- or whitespace-separated task codes.
Ordering parse_ordering(std::string_view text);
std::string join_ordering(const Ordering& ordering, std::string_view sep = ",");

/// One ordering per non-blank line; '#' starts a comment.
std::vector<Ordering> parse_ordering_list(std::string_view text);

/// Precedence DAG in Graphviz DOT, one edge per prerequisite as written.
std::string export_dot(const Workflow& workflow);

std::string solutions_json(const std::vector<Solution>& solutions, Objective objective);
std::string solutions_table(const std::vector<Solution>& solutions, Objective objective);

std::string comparison_json(const VariantComparison& comparison);
std::string comparison_table(const VariantComparison& comparison);

std::string report_table(const std::vector<ReportRow>& rows, EffectSize total);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cogorder::io
