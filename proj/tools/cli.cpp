#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "cogorder/analysis.hpp"
#include "cogorder/error.hpp"
#include "cogorder/io.hpp"
#include "cogorder/solver.hpp"
#include "cogorder/wcsp.hpp"

namespace cogorder::cli {

namespace {

struct Common {
  bool strict = false;
  std::string cost_model;
  std::string format = "table";
};

struct Options {
  Common common;
  std::string workflow;
  std::vector<std::string> variants;
  std::string objective = "min";
  std::size_t k = 1;
  std::string backend = "bnb";
  unsigned workers = 1;
  bool stats = false;
  std::string ordering;
  std::string a, b;
  std::string orderings_file;
};

io::WorkflowDocument load(const Options& o, std::ostream& err) {
  auto doc = io::load_workflow(o.workflow, {o.common.strict});
  for (const auto& w : doc.warnings) err << "warning: " << w << "\n";
  return doc;
}

CostModel cost_model(const Options& o, std::ostream& err) {
  std::vector<std::string> warnings;
  std::optional<std::filesystem::path> path;
  if (!o.common.cost_model.empty()) path = o.common.cost_model;
  auto model = io::load_cost_model(path, {o.common.strict}, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return model;
}

/// Applies --variant GROUP=MEMBER selections in order.
Workflow apply_variants(Workflow wf, const std::vector<std::string>& choices) {
  for (const auto& choice : choices) {
    const auto eq = choice.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == choice.size())
      throw DomainError("--variant expects GROUP=MEMBER, got '" + choice + "'");
    wf = instantiate_variant(wf, choice.substr(0, eq), choice.substr(eq + 1));
  }
  return wf;
}

/// Resolves any remaining group from the single member the ordering mentions.
Workflow infer_variants(Workflow wf, const Ordering& ordering) {
  while (!wf.is_concrete()) {
    const VariantGroup g = wf.variant_groups().front();
    std::vector<std::string> present;
    for (const auto& m : g.members)
      if (std::find(ordering.begin(), ordering.end(), m) != ordering.end()) present.push_back(m);
    if (present.size() != 1)
      throw DomainError("cannot infer a member of variant group '" + g.code + "' from the ordering; pass --variant " +
                        g.code + "=MEMBER");
    wf = instantiate_variant(wf, g.code, present.front());
  }
  return wf;
}

Workflow concrete_or_fail(Workflow wf) {
  if (!wf.is_concrete()) {
    std::string groups;
    for (const auto& g : wf.variant_groups()) groups += (groups.empty() ? "" : ", ") + g.code;
    throw DomainError("workflow has unresolved variant groups (" + groups +
                      "); pass --variant GROUP=MEMBER or use compare-variants");
  }
  return wf;
}

Ordering resolve_ordering(const std::string& text, const io::WorkflowDocument& doc) {
  if (const auto it = doc.known_orderings.find(text); it != doc.known_orderings.end()) return it->second;
  return io::parse_ordering(text);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load(o, err);
  out << "valid: " << doc.workflow.size() << " tasks, " << doc.workflow.variant_groups().size() << " variant group"
      << (doc.workflow.variant_groups().size() == 1 ? "" : "s");
  if (!doc.workflow.is_concrete()) {
    const auto count = [&] {
      std::uint64_t total = 0;
      for (const auto& g : doc.workflow.variant_groups()) total += g.members.size();
      return total;
    }();
    out << " (" << count << " alternatives)";
  } else {
    out << ", " << count_linear_extensions(doc.workflow) << " linear extensions";
  }
  out << "\n";
  return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load(o, err);
  SolveRequest req;
  req.workflow = concrete_or_fail(apply_variants(doc.workflow, o.variants));
  req.model = cost_model(o, err);
  req.objective = o.objective == "max" ? Objective::Maximize : Objective::Minimize;
  req.k = o.k;
  req.backend = o.backend == "exhaustive" ? Backend::Exhaustive : Backend::BranchAndBound;
  req.workers = o.workers;
  const auto solutions = solve(req);
  out << (o.common.format == "json" ? io::solutions_json(solutions, req.objective)
                                    : io::solutions_table(solutions, req.objective));
  if (o.stats && !solutions.empty()) {
    const auto& s = solutions.front().stats;
    err << "nodes " << s.nodes << ", prunes " << s.prunes << ", elapsed "
        << std::chrono::duration<double, std::milli>(s.elapsed).count() << " ms\n";
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load(o, err);
  const auto cmp = compare_variants(doc.workflow, cost_model(o, err), o.workers);
  out << (o.common.format == "json" ? io::comparison_json(cmp) : io::comparison_table(cmp));
  return kExitOk;
}

int cmd_explain(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load(o, err);
  const Ordering ordering = resolve_ordering(o.ordering, doc);
  const Workflow wf = infer_variants(apply_variants(doc.workflow, o.variants), ordering);
  auto cost = sequence_cost(ordering, wf, cost_model(o, err));
  Solution s{ordering, cost.total, std::move(cost.breakdowns), {}};
  if (o.common.format == "json") {
    out << io::solutions_json({s}, Objective::Minimize);
  } else {
    out << "ordering: " << io::join_ordering(ordering, " ") << "\n";
    out << io::report_table(transition_report(s), s.total);
  }
  return kExitOk;
}

int cmd_distance(const Options& o, std::ostream& out, std::ostream&) {
  const double d = ordering_distance(io::parse_ordering(o.a), io::parse_ordering(o.b));
  out << std::fixed << std::setprecision(4) << d << "\n";
  return kExitOk;
}

int cmd_consensus(const Options& o, std::ostream& out, std::ostream&) {
  const auto orderings = io::parse_ordering_list(io::read_text_file(o.orderings_file));
  out << io::join_ordering(consensus_ordering(orderings)) << "\n";
  return kExitOk;
}

int cmd_export_dot(const Options& o, std::ostream& out, std::ostream& err) {
  out << io::export_dot(load(o, err).workflow);
  return kExitOk;
}

int cmd_dump_wcsp(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load(o, err);
  const Workflow wf = concrete_or_fail(apply_variants(doc.workflow, o.variants));
  out << encode_workflow(wf, cost_model(o, err)).dump();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum cognitive-cost ordering of partially ordered workflow tasks", "cogorder"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool with_cost_model, bool with_format) {
    sub->add_flag("--strict", o.common.strict, "Reject unknown keys in input documents");
    if (with_cost_model)
      sub->add_option("--cost-model", o.common.cost_model,
                      std::string("Cost-model override file (JSON); defaults to $") + io::kCostModelEnv);
    if (with_format)
      sub->add_option("--format", o.common.format, "Output format")
          ->check(CLI::IsMember({"table", "json"}))
          ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Check a workflow document");
  validate->add_option("workflow", o.workflow, "Workflow file")->required();
  add_common(validate, false, false);

  auto* solve_cmd = app.add_subcommand("solve", "Find optimal (or pessimal) orderings");
  solve_cmd->add_option("workflow", o.workflow, "Workflow file")->required();
  solve_cmd->add_option("--variant", o.variants, "Instantiate a variant group, GROUP=MEMBER");
  solve_cmd->add_option("--objective", o.objective, "min or max")
      ->check(CLI::IsMember({"min", "max"}))
      ->capture_default_str();
  solve_cmd->add_option("--k", o.k, "Number of solutions")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--backend", o.backend, "bnb or exhaustive")
      ->check(CLI::IsMember({"bnb", "exhaustive"}))
      ->capture_default_str();
  solve_cmd->add_option("--workers", o.workers, "Search threads")->check(CLI::Range(1U, 256U))->capture_default_str();
  solve_cmd->add_flag("--stats", o.stats, "Print search statistics to stderr");
  add_common(solve_cmd, true, true);

  auto* compare = app.add_subcommand("compare-variants", "Minimize each variant-group member and rank them");
  compare->add_option("workflow", o.workflow, "Workflow file")->required();
  compare->add_option("--workers", o.workers, "Search threads")->check(CLI::Range(1U, 256U))->capture_default_str();
  add_common(compare, true, true);

  auto* explain = app.add_subcommand("explain", "Cost breakdown of a given ordering");
  explain->add_option("workflow", o.workflow, "Workflow file")->required();
  explain->add_option("--ordering", o.ordering, "Comma-separated codes or a known ordering name")->required();
  explain->add_option("--variant", o.variants, "Instantiate a variant group, GROUP=MEMBER");
  add_common(explain, true, true);

  auto* distance = app.add_subcommand("distance", "Euclidean distance between two orderings");
  distance->add_option("--a", o.a, "First ordering (comma-separated codes)")->required();
  distance->add_option("--b", o.b, "Second ordering (comma-separated codes)")->required();

  auto* consensus = app.add_subcommand("consensus", "Positional-mode consensus of many orderings");
  consensus->add_option("orderings", o.orderings_file, "File with one comma-separated ordering per line")->required();

  auto* dot = app.add_subcommand("export-dot", "Precedence graph in Graphviz DOT");
  dot->add_option("workflow", o.workflow, "Workflow file")->required();
  add_common(dot, false, false);

  auto* wcsp = app.add_subcommand("dump-wcsp", "Print the weighted CSP encoding (debugging aid)");
  wcsp->add_option("workflow", o.workflow, "Workflow file")->required();
  wcsp->add_option("--variant", o.variants, "Instantiate a variant group, GROUP=MEMBER");
  add_common(wcsp, true, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
    if (explain->parsed()) return cmd_explain(o, out, err);
    if (distance->parsed()) return cmd_distance(o, out, err);
    if (consensus->parsed()) return cmd_consensus(o, out, err);
    if (dot->parsed()) return cmd_export_dot(o, out, err);
    if (wcsp->parsed()) return cmd_dump_wcsp(o, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace cogorder::cli
