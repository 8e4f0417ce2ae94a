#include "cogorder/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cogorder/error.hpp"

namespace cogorder::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DomainError(std::string(source) + ": malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }
}

/// Field-path aware accessors over one JSON document.
class Reader {
 public:
  Reader(std::string_view source, const LoadOptions& options, std::vector<std::string>& warnings)
      : source_(source), options_(options), warnings_(warnings) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw DomainError(std::string(source_) + ": " + path + ": " + msg);
  }

  void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (known) continue;
      const std::string where = path.empty() ? key : path + "." + key;
      if (options_.strict) fail(where, "unknown key");
      warnings_.push_back(std::string(source_) + ": " + where + ": unknown key ignored");
    }
  }

  const json& object_at(const json& parent, const std::string& key, const std::string& path) const {
    if (!parent.contains(key)) fail(path + key, "missing required field");
    return parent.at(key);
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  int integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
  }

  bool boolean(const json& v, const std::string& path) const {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
  }

  EffectSize effect(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    try {
      return EffectSize::from_decimal(v.get<double>());
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  }

  std::vector<std::string> codes(const json& v, const std::string& path) const {
    if (v.is_string()) return parse_ordering(v.get<std::string>());
    if (!v.is_array()) fail(path, "expected an array of codes");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

 private:
  std::string_view source_;
  const LoadOptions& options_;
  std::vector<std::string>& warnings_;
};

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string mean_transition(const Solution& s) {
  if (s.breakdowns.empty()) return "n/a";
  return fixed3(s.total.value() / static_cast<double>(s.breakdowns.size()));
}

ordered_json transition_json(const TransitionBreakdown& b) {
  ordered_json rules = ordered_json::array();
  for (const auto& [rule, cost] : b.fired_rules)
    rules.push_back({{"rule", rule_name(rule)}, {"milli", cost.milli()}, {"cost", cost.to_string()}});
  return {{"from", b.from},
          {"to", b.to},
          {"resource_milli", b.resource_cost.milli()},
          {"resource", b.resource_cost.to_string()},
          {"rules", rules},
          {"total_milli", b.total.milli()},
          {"total", b.total.to_string()}};
}

ordered_json solution_json(const Solution& s) {
  ordered_json transitions = ordered_json::array();
  for (const auto& b : s.breakdowns) transitions.push_back(transition_json(b));
  return {{"ordering", s.ordering},
          {"total_milli", s.total.milli()},
          {"total", s.total.to_string()},
          {"transition_count", s.breakdowns.size()},
          {"mean_transition", mean_transition(s)},
          {"transitions", transitions}};
}

std::string rules_text(const std::vector<FiredRule>& rules) {
  if (rules.empty()) return "-";
  std::string out;
  for (const auto& [rule, cost] : rules) {
    if (!out.empty()) out += " ";
    out += std::string(rule_name(rule)) + "(" + cost.to_string() + ")";
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string dot_id(std::string_view s) { return "\"" + dot_escape(s) + "\""; }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Orderings -----------------------------------------------------------------

Ordering parse_ordering(std::string_view text) {
  Ordering out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

std::string join_ordering(const Ordering& ordering, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (i) out += sep;
    out += ordering[i];
  }
  return out;
}

std::vector<Ordering> parse_ordering_list(std::string_view text) {
  std::vector<Ordering> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto o = parse_ordering(line);
    if (!o.empty()) out.push_back(std::move(o));
  }
  return out;
}

// Workflow documents ---------------------------------------------------------

WorkflowDocument parse_workflow(std::string_view text, std::string_view source, const LoadOptions& options) {
  WorkflowDocument doc;
  Reader r(source, options, doc.warnings);
  const json root = parse_json(text, source);
  if (!root.is_object()) r.fail("(root)", "expected an object");
  r.check_keys(root, "", {"tasks", "variant_groups", "known_orderings"});

  const json& tasks = r.object_at(root, "tasks", "");
  if (!tasks.is_array()) r.fail("tasks", "expected an array");
  std::vector<Task> parsed;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string p = "tasks[" + std::to_string(i) + "]";
    const json& t = tasks[i];
    if (!t.is_object()) r.fail(p, "expected an object");
    r.check_keys(t, p, {"code", "name", "resource", "modality", "voluntary", "familiarity", "complexity", "prerequisites"});
    Task task;
    task.code = r.string(r.object_at(t, "code", p + "."), p + ".code");
    task.name = t.contains("name") ? r.string(t["name"], p + ".name") : task.code;
    const auto resource = r.string(r.object_at(t, "resource", p + "."), p + ".resource");
    const auto parsed_resource = parse_resource(resource);
    if (!parsed_resource) r.fail(p + ".resource", "unknown cognitive resource '" + resource + "' (expected VWM, PM, DR, SR or ER)");
    task.resource = *parsed_resource;
    task.modality = normalize_modality(r.string(r.object_at(t, "modality", p + "."), p + ".modality"));
    if (task.modality.empty()) r.fail(p + ".modality", "modality must not be empty");
    task.voluntary = r.boolean(r.object_at(t, "voluntary", p + "."), p + ".voluntary");
    task.familiarity = r.integer(r.object_at(t, "familiarity", p + "."), p + ".familiarity");
    task.complexity = r.integer(r.object_at(t, "complexity", p + "."), p + ".complexity");
    if (t.contains("prerequisites")) task.prerequisites = r.codes(t["prerequisites"], p + ".prerequisites");
    parsed.push_back(std::move(task));
  }

  std::vector<VariantGroup> groups;
  if (root.contains("variant_groups")) {
    const json& gs = root["variant_groups"];
    if (!gs.is_array()) r.fail("variant_groups", "expected an array");
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const std::string p = "variant_groups[" + std::to_string(i) + "]";
      if (!gs[i].is_object()) r.fail(p, "expected an object");
      r.check_keys(gs[i], p, {"code", "members"});
      VariantGroup g;
      g.code = r.string(r.object_at(gs[i], "code", p + "."), p + ".code");
      g.members = r.codes(r.object_at(gs[i], "members", p + "."), p + ".members");
      groups.push_back(std::move(g));
    }
  }

  doc.workflow = Workflow(std::move(parsed), std::move(groups));
  const auto report = validate_workflow(doc.workflow);
  if (!report.ok()) {
    std::string msg = std::string(source) + ": invalid workflow:";
    for (const auto& v : report.violations) msg += "\n  - " + v.message;
    throw DomainError(msg);
  }

  if (root.contains("known_orderings")) {
    const json& ko = root["known_orderings"];
    if (!ko.is_object()) r.fail("known_orderings", "expected an object of name -> codes");
    for (const auto& [name, value] : ko.items()) {
      const std::string p = "known_orderings." + name;
      auto ordering = r.codes(value, p);
      for (const auto& code : ordering)
        if (!doc.workflow.find_task(code)) r.fail(p, "unknown task code '" + code + "'");
      doc.known_orderings.emplace(name, std::move(ordering));
    }
  }
  return doc;
}

WorkflowDocument load_workflow(const std::filesystem::path& path, const LoadOptions& options) {
  return parse_workflow(read_text_file(path), path.string(), options);
}

std::string serialize_workflow(const Workflow& workflow, const std::map<std::string, Ordering>& known_orderings) {
  ordered_json root;
  ordered_json tasks = ordered_json::array();
  for (const auto& t : workflow.tasks()) {
    tasks.push_back({{"code", t.code},
                     {"name", t.name},
                     {"resource", resource_code(t.resource)},
                     {"modality", t.modality},
                     {"voluntary", t.voluntary},
                     {"familiarity", t.familiarity},
                     {"complexity", t.complexity},
                     {"prerequisites", t.prerequisites}});
  }
  root["tasks"] = tasks;
  ordered_json groups = ordered_json::array();
  for (const auto& g : workflow.variant_groups()) groups.push_back({{"code", g.code}, {"members", g.members}});
  root["variant_groups"] = groups;
  if (!known_orderings.empty()) {
    ordered_json ko = ordered_json::object();
    for (const auto& [name, o] : known_orderings) ko[name] = o;
    root["known_orderings"] = ko;
  }
  return root.dump(2) + "\n";
}

// Cost models ----------------------------------------------------------------

CostModel parse_cost_model(std::string_view text, std::string_view source, const LoadOptions& options,
                           std::vector<std::string>* warnings) {
  CostModel model;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return model;

  std::vector<std::string> local;
  Reader r(source, options, warnings ? *warnings : local);
  const json root = parse_json(text, source);
  if (!root.is_object()) r.fail("(root)", "expected an object");
  r.check_keys(root, "", {"matrix", "rules", "disabled_rules", "recent_practice_scope", "rules_enabled"});

  if (root.contains("matrix")) {
    const json& m = root["matrix"];
    static constexpr std::array<CognitiveResource, kResourceCount> kOrder = {
        CognitiveResource::VisualWorkingMemory, CognitiveResource::ProceduralMemory,
        CognitiveResource::DeclarativeRecall, CognitiveResource::SemanticRecognition,
        CognitiveResource::EpisodicRecognition};
    if (m.is_array()) {
      if (m.size() != kResourceCount) r.fail("matrix", "expected 5 rows (VWM, PM, DR, SR, ER)");
      for (std::size_t i = 0; i < kResourceCount; ++i) {
        const std::string p = "matrix[" + std::to_string(i) + "]";
        if (!m[i].is_array() || m[i].size() != kResourceCount) r.fail(p, "expected 5 columns");
        for (std::size_t j = 0; j < kResourceCount; ++j)
          model.matrix.set(kOrder[i], kOrder[j], r.effect(m[i][j], p + "[" + std::to_string(j) + "]"));
      }
    } else if (m.is_object()) {
      // Sparse overrides: {"SR": {"DR": 1.0}}
      for (const auto& [from, row] : m.items()) {
        const auto rf = parse_resource(from);
        if (!rf) r.fail("matrix." + from, "unknown cognitive resource");
        if (!row.is_object()) r.fail("matrix." + from, "expected an object of target -> cost");
        for (const auto& [to, cost] : row.items()) {
          const auto rt = parse_resource(to);
          if (!rt) r.fail("matrix." + from + "." + to, "unknown cognitive resource");
          model.matrix.set(*rf, *rt, r.effect(cost, "matrix." + from + "." + to));
        }
      }
    } else {
      r.fail("matrix", "expected a 5x5 array or an object of overrides");
    }
  }

  if (root.contains("rules")) {
    const json& rules = root["rules"];
    if (!rules.is_object()) r.fail("rules", "expected an object of rule -> cost");
    for (const auto& [name, cost] : rules.items()) {
      const auto rule = parse_rule(name);
      if (!rule) r.fail("rules." + name, "unknown rule");
      model.rule_costs[static_cast<std::size_t>(*rule)] = r.effect(cost, "rules." + name);
    }
  }
  if (root.contains("disabled_rules")) {
    const auto names = r.codes(root["disabled_rules"], "disabled_rules");
    for (const auto& name : names) {
      const auto rule = parse_rule(name);
      if (!rule) r.fail("disabled_rules", "unknown rule '" + name + "'");
      model.rule_enabled[static_cast<std::size_t>(*rule)] = false;
    }
  }
  if (root.contains("recent_practice_scope")) {
    const auto s = r.string(root["recent_practice_scope"], "recent_practice_scope");
    const auto scope = parse_scope(s);
    if (!scope) r.fail("recent_practice_scope", "expected 'adjacent-only' or 'full-history'");
    model.recent_practice_scope = *scope;
  }
  if (root.contains("rules_enabled")) model.rules_enabled = r.boolean(root["rules_enabled"], "rules_enabled");
  return model;
}

CostModel load_cost_model(const std::optional<std::filesystem::path>& path, const LoadOptions& options,
                          std::vector<std::string>* warnings) {
  std::optional<std::filesystem::path> chosen = path;
  if (!chosen) {
    if (const char* env = std::getenv(kCostModelEnv); env && *env) chosen = std::filesystem::path(env);
  }
  if (!chosen) return CostModel{};
  return parse_cost_model(read_text_file(*chosen), chosen->string(), options, warnings);
}

std::string serialize_cost_model(const CostModel& model) {
  static constexpr std::array<CognitiveResource, kResourceCount> kOrder = {
      CognitiveResource::VisualWorkingMemory, CognitiveResource::ProceduralMemory,
      CognitiveResource::DeclarativeRecall, CognitiveResource::SemanticRecognition,
      CognitiveResource::EpisodicRecognition};
  ordered_json matrix = ordered_json::array();
  for (auto from : kOrder) {
    ordered_json row = ordered_json::array();
    for (auto to : kOrder) row.push_back(model.matrix.at(from, to).value());
    matrix.push_back(row);
  }
  ordered_json rules = ordered_json::object();
  std::vector<std::string> disabled;
  for (auto r : kAllRules) {
    rules[std::string(rule_name(r))] = model.rule_cost(r).value();
    if (!model.rule_enabled[static_cast<std::size_t>(r)]) disabled.emplace_back(rule_name(r));
  }
  ordered_json root = {{"matrix", matrix},
                       {"rules", rules},
                       {"disabled_rules", disabled},
                       {"recent_practice_scope", scope_name(model.recent_practice_scope)},
                       {"rules_enabled", model.rules_enabled}};
  return root.dump(2) + "\n";
}

// DOT ------------------------------------------------------------------------

std::string export_dot(const Workflow& workflow) {
  std::ostringstream os;
  os << "digraph workflow {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";
  for (const auto& t : workflow.tasks()) os << "  " << dot_id(t.code) << " [label=\"" << dot_escape(t.code) << "\\n" << dot_escape(t.name) << "\"];\n";
  for (const auto& g : workflow.variant_groups()) {
    os << "  " << dot_id(g.code) << " [shape=diamond, style=dashed];\n";
    os << "  subgraph " << dot_id("cluster_" + g.code) << " {\n";
    os << "    label=" << dot_id(g.code + " alternatives") << ";\n";
    os << "    style=dashed;\n";
    for (const auto& m : g.members) os << "    " << dot_id(m) << ";\n";
    os << "  }\n";
  }
  for (const auto& t : workflow.tasks())
    for (const auto& p : t.prerequisites) os << "  " << dot_id(p) << " -> " << dot_id(t.code) << ";\n";
  os << "}\n";
  return os.str();
}

// Reports --------------------------------------------------------------------

std::string solutions_json(const std::vector<Solution>& solutions, Objective objective) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    ordered_json s = {{"rank", i + 1}};
    s.update(solution_json(solutions[i]));
    arr.push_back(s);
  }
  ordered_json root = {{"objective", objective_name(objective)}, {"solutions", arr}};
  return root.dump(2) + "\n";
}

std::string solutions_table(const std::vector<Solution>& solutions, Objective objective) {
  std::ostringstream os;
  os << "objective: " << (objective == Objective::Minimize ? "minimize" : "maximize") << "\n";
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const auto& s = solutions[i];
    os << "#" << (i + 1) << "  total " << s.total.to_string() << "  (" << s.breakdowns.size()
       << " transitions, mean " << mean_transition(s) << ")\n";
    os << "    " << join_ordering(s.ordering, " ") << "\n";
  }
  return os.str();
}

std::string comparison_json(const VariantComparison& comparison) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < comparison.rows.size(); ++i) {
    const auto& row = comparison.rows[i];
    ordered_json choice = ordered_json::object();
    for (const auto& [g, m] : row.choice) choice[g] = m;
    ordered_json r = {{"rank", i + 1}, {"choice", choice}};
    r.update(solution_json(row.solution));
    rows.push_back(r);
  }
  ordered_json root = {{"variants", rows},
                       {"spread_milli", comparison.spread.milli()},
                       {"spread", comparison.spread.to_string()}};
  return root.dump(2) + "\n";
}

std::string comparison_table(const VariantComparison& comparison) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "rank" << std::setw(22) << "variant" << std::setw(9) << "total" << std::setw(8)
     << "mean"
     << "ordering\n";
  for (std::size_t i = 0; i < comparison.rows.size(); ++i) {
    const auto& row = comparison.rows[i];
    std::string choice;
    for (const auto& [g, m] : row.choice) choice += (choice.empty() ? "" : " ") + g + "=" + m;
    os << std::left << std::setw(6) << (i + 1) << std::setw(22) << choice << std::setw(9)
       << row.solution.total.to_string() << std::setw(8) << mean_transition(row.solution)
       << join_ordering(row.solution.ordering, " ") << "\n";
  }
  os << "spread (dearest - cheapest): " << comparison.spread.to_string() << "\n";
  return os.str();
}

std::string report_table(const std::vector<ReportRow>& rows, EffectSize total) {
  std::ostringstream os;
  os << std::right << std::setw(3) << "#" << "  " << std::left << std::setw(6) << "from" << std::setw(6) << "to"
     << std::right << std::setw(9) << "resource" << "  " << std::left << std::setw(56) << "rules" << std::right
     << std::setw(8) << "step" << std::setw(9) << "running" << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << std::right << std::setw(3) << (i + 1) << "  " << std::left << std::setw(6) << r.from << std::setw(6) << r.to
       << std::right << std::setw(9) << r.resource_cost.to_string() << "  " << std::left << std::setw(56)
       << rules_text(r.fired_rules) << std::right << std::setw(8) << r.transition_total.to_string() << std::setw(9)
       << r.running_total.to_string() << "\n";
  }
  os << "total: " << total.to_string() << " over " << rows.size() << " transitions\n";
  return os.str();
}

}  // namespace cogorder::io
