#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cogorder/analysis.hpp"
#include "cogorder/error.hpp"
#include "cogorder/io.hpp"
#include "cogorder/solver.hpp"
#include "cogorder/wcsp.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace cogorder;

namespace {

Objective to_objective(const std::string& s) {
  if (s == "min" || s == "minimize") return Objective::Minimize;
  if (s == "max" || s == "maximize") return Objective::Maximize;
  throw DomainError("objective must be 'min' or 'max', got '" + s + "'");
}

Backend to_backend(const std::string& s) {
  if (s == "bnb" || s == "branch-and-bound") return Backend::BranchAndBound;
  if (s == "exhaustive") return Backend::Exhaustive;
  throw DomainError("backend must be 'bnb' or 'exhaustive', got '" + s + "'");
}

py::dict breakdown_dict(const TransitionBreakdown& b) {
  py::list rules;
  for (const auto& [rule, cost] : b.fired_rules) rules.append(py::make_tuple(std::string(rule_name(rule)), cost.value()));
  py::dict d;
  d["from"] = b.from;
  d["to"] = b.to;
  d["resource_cost"] = b.resource_cost.value();
  d["rules"] = rules;
  d["total"] = b.total.value();
  d["total_milli"] = b.total.milli();
  return d;
}

py::list breakdown_list(const std::vector<TransitionBreakdown>& bs) {
  py::list out;
  for (const auto& b : bs) out.append(breakdown_dict(b));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum cognitive-cost ordering of partially ordered workflow tasks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::enum_<CognitiveResource>(m, "CognitiveResource")
      .value("VWM", CognitiveResource::VisualWorkingMemory)
      .value("PM", CognitiveResource::ProceduralMemory)
      .value("DR", CognitiveResource::DeclarativeRecall)
      .value("SR", CognitiveResource::SemanticRecognition)
      .value("ER", CognitiveResource::EpisodicRecognition);

  py::class_<Task>(m, "Task")
      .def(py::init([](std::string code, CognitiveResource resource, const std::string& modality, bool voluntary,
                       int familiarity, int complexity, std::vector<std::string> prerequisites, std::string name) {
             return Task{code, name.empty() ? code : name, resource, normalize_modality(modality), voluntary,
                         familiarity, complexity, std::move(prerequisites)};
           }),
           py::arg("code"), py::arg("resource"), py::arg("modality"), py::arg("voluntary") = false,
           py::arg("familiarity") = 3, py::arg("complexity") = 3, py::arg("prerequisites") = std::vector<std::string>{},
           py::arg("name") = "")
      .def_readonly("code", &Task::code)
      .def_readonly("name", &Task::name)
      .def_readonly("resource", &Task::resource)
      .def_readonly("modality", &Task::modality)
      .def_readonly("voluntary", &Task::voluntary)
      .def_readonly("familiarity", &Task::familiarity)
      .def_readonly("complexity", &Task::complexity)
      .def_readonly("prerequisites", &Task::prerequisites)
      .def("__repr__", [](const Task& t) { return "<Task " + t.code + ">"; });

  py::class_<VariantGroup>(m, "VariantGroup")
      .def(py::init<std::string, std::vector<std::string>>(), py::arg("code"), py::arg("members"))
      .def_readonly("code", &VariantGroup::code)
      .def_readonly("members", &VariantGroup::members);

  py::class_<Workflow>(m, "Workflow")
      .def(py::init<std::vector<Task>, std::vector<VariantGroup>>(), py::arg("tasks"),
           py::arg("variant_groups") = std::vector<VariantGroup>{})
      .def_property_readonly("tasks", &Workflow::tasks)
      .def_property_readonly("variant_groups", &Workflow::variant_groups)
      .def_property_readonly("is_concrete", &Workflow::is_concrete)
      .def("__len__", &Workflow::size)
      .def("codes", &Workflow::sorted_codes)
      .def("__eq__", [](const Workflow& a, const Workflow& b) { return a == b; });

  py::class_<CostModel>(m, "CostModel")
      .def(py::init<>())
      .def_readwrite("rules_enabled", &CostModel::rules_enabled)
      .def_property(
          "recent_practice_scope", [](const CostModel& c) { return std::string(scope_name(c.recent_practice_scope)); },
          [](CostModel& c, const std::string& s) {
            const auto scope = parse_scope(s);
            if (!scope) throw DomainError("unknown scope '" + s + "'");
            c.recent_practice_scope = *scope;
          })
      .def("resource_cost",
           [](const CostModel& c, CognitiveResource from, CognitiveResource to) {
             return resource_switch_cost(from, to, c.matrix).value();
           })
      .def("rule_cost",
           [](const CostModel& c, const std::string& name) {
             const auto r = parse_rule(name);
             if (!r) throw DomainError("unknown rule '" + name + "'");
             return c.rule_cost(*r).value();
           })
      .def("to_json", &io::serialize_cost_model);

  py::class_<Solution>(m, "Solution")
      .def_readonly("ordering", &Solution::ordering)
      .def_property_readonly("total", [](const Solution& s) { return s.total.value(); })
      .def_property_readonly("total_milli", [](const Solution& s) { return s.total.milli(); })
      .def_property_readonly("breakdowns", [](const Solution& s) { return breakdown_list(s.breakdowns); })
      .def_property_readonly("nodes", [](const Solution& s) { return s.stats.nodes; })
      .def("__repr__", [](const Solution& s) {
        return "<Solution total=" + s.total.to_string() + " " + io::join_ordering(s.ordering) + ">";
      });

  m.def(
      "load_workflow",
      [](const std::filesystem::path& path, bool strict) {
        auto doc = io::load_workflow(path, {strict});
        return py::make_tuple(doc.workflow, doc.known_orderings);
      },
      py::arg("path"), py::arg("strict") = false,
      "Load a workflow document; returns (workflow, known_orderings).");
  m.def(
      "parse_workflow",
      [](const std::string& text, bool strict) {
        auto doc = io::parse_workflow(text, "<string>", {strict});
        return py::make_tuple(doc.workflow, doc.known_orderings);
      },
      py::arg("text"), py::arg("strict") = false);
  m.def("serialize_workflow", [](const Workflow& w) { return io::serialize_workflow(w); });
  m.def(
      "load_cost_model",
      [](std::optional<std::filesystem::path> path) { return io::load_cost_model(path); },
      py::arg("path") = py::none());
  m.def("parse_cost_model", [](const std::string& text) { return io::parse_cost_model(text); });

  m.def("validate_workflow", [](const Workflow& w) {
    std::vector<std::string> out;
    for (const auto& v : validate_workflow(w).violations)
      out.push_back(std::string(violation_kind_name(v.kind)) + ": " + v.message);
    return out;
  });
  m.def("instantiate_variant", &instantiate_variant, py::arg("workflow"), py::arg("group"), py::arg("member"));
  m.def("is_linear_extension",
        [](const std::vector<std::string>& o, const Workflow& w) { return is_linear_extension(o, w); });
  m.def("count_linear_extensions", &count_linear_extensions);
  m.def(
      "enumerate_linear_extensions",
      [](const Workflow& w, std::optional<std::uint64_t> limit) { return enumerate_linear_extensions(w, limit); },
      py::arg("workflow"), py::arg("limit") = py::none());

  m.def(
      "sequence_cost",
      [](const std::vector<std::string>& o, const Workflow& w, const CostModel& model) {
        auto c = sequence_cost(o, w, model);
        return py::make_tuple(c.total.value(), breakdown_list(c.breakdowns));
      },
      py::arg("ordering"), py::arg("workflow"), py::arg("model") = CostModel{});

  m.def(
      "solve",
      [](const Workflow& w, const CostModel& model, const std::string& objective, std::size_t k,
         const std::string& backend, unsigned workers) {
        SolveRequest req{w, model, to_objective(objective), k, to_backend(backend), workers};
        py::gil_scoped_release release;
        return solve(req);
      },
      py::arg("workflow"), py::arg("model") = CostModel{}, py::arg("objective") = "min", py::arg("k") = 1,
      py::arg("backend") = "bnb", py::arg("workers") = 1);
  m.def(
      "brute_force",
      [](const Workflow& w, const CostModel& model, const std::string& objective) {
        return brute_force(w, model, to_objective(objective));
      },
      py::arg("workflow"), py::arg("model") = CostModel{}, py::arg("objective") = "min");
  m.def(
      "compare_variants",
      [](const Workflow& w, const CostModel& model, unsigned workers) {
        const auto cmp = compare_variants(w, model, workers);
        py::list rows;
        for (const auto& row : cmp.rows) rows.append(py::make_tuple(row.choice, row.solution));
        return py::make_tuple(rows, cmp.spread.value());
      },
      py::arg("workflow"), py::arg("model") = CostModel{}, py::arg("workers") = 1,
      "Returns ([(choice, Solution), ...] ascending by total, spread).");

  m.def(
      "wcsp_cost",
      [](const Workflow& w, const CostModel& model, const Ordering& o) -> std::optional<std::int64_t> {
        const auto inst = encode_workflow(w, model);
        return evaluate_assignment(inst, assignment_from_ordering(inst, o));
      },
      py::arg("workflow"), py::arg("model"), py::arg("ordering"),
      "Evaluate an ordering through the weighted-CSP encoding (thousandths, None if infeasible).");
  m.def("dump_wcsp", [](const Workflow& w, const CostModel& model) { return encode_workflow(w, model).dump(); });

  m.def("ordering_distance", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return ordering_distance(a, b);
  });
  m.def("consensus_ordering", [](const std::vector<Ordering>& os) { return consensus_ordering(os); });
  m.def("export_dot", &io::export_dot);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
