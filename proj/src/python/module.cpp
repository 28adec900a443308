// Python bindings. Machines cross the boundary as JSON text in the machine
// file format; the pure-Python wrapper in remap/__init__.py turns them into dicts.
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "remap/automata.hpp"
#include "remap/errors.hpp"
#include "remap/harness.hpp"
#include "remap/learner.hpp"
#include "remap/lstar.hpp"
#include "remap/machine_io.hpp"
#include "remap/regex.hpp"

namespace py = pybind11;
using namespace remap;

namespace {

std::optional<Rational> parse_opt(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return Rational::parse(*text);
}

MooreMachine truth_of(const std::string& machine_json, const std::optional<std::string>& halt) {
  return ground_truth(parse_machine(machine_json), parse_opt(halt));
}

py::dict learn(const std::string& target, const std::string& teacher, std::optional<std::uint64_t> samples,
               std::uint64_t seed, double stop_prob, const std::optional<std::string>& halt) {
  const auto truth = truth_of(target, halt);
  TeacherConfig cfg;
  cfg.mode = parse_teacher_mode(teacher);
  cfg.pac_samples = samples;
  cfg.seed = seed;
  cfg.length_stop_prob = stop_prob;
  cfg.validate();
  LearnResult result = [&] {
    py::gil_scoped_release release;
    SimulatedTeacher t(truth, cfg);
    return run_remap(truth.input_alphabet(), truth.output_alphabet(), t);
  }();
  py::dict out;
  out["machine"] = dump_machine(result.machine);
  out["trace"] = trace_to_jsonl(result.trace);
  out["pref_queries"] = result.stats.pref_queries;
  out["eq_queries"] = result.stats.eq_queries;
  out["unique_sequences"] = result.stats.unique_sequences;
  out["hypothesis_sizes"] = result.hypothesis_sizes;
  out["isomorphic"] = isomorphic(result.machine, truth);
  return out;
}

py::dict lstar(const std::string& target, const std::optional<std::string>& halt) {
  const auto truth = truth_of(target, halt);
  const auto result = lstar_baseline(truth);
  py::dict out;
  out["machine"] = dump_machine(result.machine);
  out["membership_queries"] = result.membership_queries;
  out["eq_queries"] = result.eq_queries;
  out["isomorphic"] = isomorphic(result.machine, truth);
  return out;
}

std::vector<double> experiment(const std::string& target, const std::vector<std::optional<std::uint64_t>>& grid,
                               std::size_t trials, std::uint64_t seed, std::size_t jobs, std::size_t eval_random,
                               const std::optional<std::string>& halt) {
  const auto truth = truth_of(target, halt);
  std::vector<GridRow> rows;
  {
    py::gil_scoped_release release;
    rows = isomorphism_probability(truth, grid, trials, seed, jobs, eval_random);
  }
  std::vector<double> fractions;
  for (const auto& r : rows) fractions.push_back(r.fraction_isomorphic);
  return fractions;
}

std::string run_word(const std::string& machine_json, const std::vector<std::string>& word) {
  const auto m = parse_machine(machine_json);
  if (const auto* moore = std::get_if<MooreMachine>(&m)) return moore->run(moore->input_alphabet().parse(word)).str();
  if (const auto* mealy = std::get_if<MealyMachine>(&m)) {
    const auto out = mealy->run(mealy->input_alphabet().parse(word));
    if (!out) throw IncompleteMachine("word is not defined on this machine");
    return out->str();
  }
  throw BadMachineFile("run needs a moore or mealy machine");
}

}  // namespace

PYBIND11_MODULE(_remap, m) {
  m.doc() = "Reward machine learning from preference and equivalence queries";

  py::register_exception<Error>(m, "RemapError");

  m.def("load_machine", [](const std::string& path) { return dump_machine(load_machine(path)); }, py::arg("path"));
  m.def("normalize_machine", [](const std::string& text) { return dump_machine(parse_machine(text)); },
        py::arg("machine"));
  m.def("ground_truth",
        [](const std::string& machine, const std::optional<std::string>& halt) {
          return dump_machine(truth_of(machine, halt));
        },
        py::arg("machine"), py::arg("halt_output") = py::none());
  m.def("learn", &learn, py::arg("target"), py::arg("teacher") = "exact", py::arg("samples") = py::none(),
        py::arg("seed") = 0, py::arg("stop_prob") = 0.2, py::arg("halt_output") = py::none());
  m.def("lstar", &lstar, py::arg("target"), py::arg("halt_output") = py::none());
  m.def("experiment", &experiment, py::arg("target"), py::arg("grid"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("jobs") = 1, py::arg("eval_random") = 1000, py::arg("halt_output") = py::none());
  m.def("isomorphic",
        [](const std::string& a, const std::string& b) {
          return isomorphic(moore_from_json(nlohmann::json::parse(a)), moore_from_json(nlohmann::json::parse(b)));
        },
        py::arg("a"), py::arg("b"));
  m.def("minimize",
        [](const std::string& machine) { return dump_machine(minimize(moore_from_json(nlohmann::json::parse(machine)))); },
        py::arg("machine"));
  m.def("from_regex_union",
        [](const std::vector<std::string>& components, const std::vector<std::string>& alphabet) {
          return dump_machine(from_regex_union(components, Alphabet(alphabet)));
        },
        py::arg("components"), py::arg("alphabet"));
  m.def("run", &run_word, py::arg("machine"), py::arg("word"));
  m.def("convert",
        [](const std::string& op, const std::string& machine, const std::optional<std::string>& halt,
           const std::vector<std::string>& props) {
          return dump_machine(convert_machine(op, parse_machine(machine), parse_opt(halt), props));
        },
        py::arg("op"), py::arg("machine"), py::arg("halt_output") = py::none(),
        py::arg("props") = std::vector<std::string>{});
}
