#include "remap/machine_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "remap/automata.hpp"
#include "remap/errors.hpp"

namespace remap {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json outputs_json(const OutputAlphabet& out) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : out) arr.push_back(v.str());
  return arr;
}

[[noreturn]] void bad(const std::string& why) { throw BadMachineFile(why); }

void check_keys(const json& j, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) bad("machine must be a JSON object");
  std::set<std::string> allowed;
  for (auto k : required) {
    if (!j.contains(k)) bad(std::string("missing field '") + k + "'");
    allowed.insert(k);
  }
  for (auto k : optional) allowed.insert(k);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad("unknown field '" + it.key() + "'");
}

Rational value_of(const json& v) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  bad("output value must be a string \"p\" or \"p/q\"");
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) bad(std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

struct Common {
  OutputAlphabet output;
  std::vector<std::string> states;
  std::map<std::string, State> state_index;
  State initial = 0;
};

Common read_common(const json& j) {
  Common c;
  std::vector<Rational> outs;
  if (!j.at("output_alphabet").is_array()) bad("output_alphabet must be an array");
  for (const auto& v : j.at("output_alphabet")) outs.push_back(value_of(v));
  try {
    c.output = make_output_alphabet(std::move(outs));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  c.states = string_list(j.at("states"), "states");
  if (c.states.empty()) bad("no states");
  for (std::size_t i = 0; i < c.states.size(); ++i)
    if (!c.state_index.emplace(c.states[i], static_cast<State>(i)).second) bad("duplicate state '" + c.states[i] + "'");
  if (!j.at("initial").is_string()) bad("initial must be a state name");
  auto it = c.state_index.find(j.at("initial").get<std::string>());
  if (it == c.state_index.end()) bad("initial state is not listed in states");
  c.initial = it->second;
  return c;
}

State state_ref(const Common& c, const json& v) {
  if (!v.is_string()) bad("state reference must be a string");
  auto it = c.state_index.find(v.get<std::string>());
  if (it == c.state_index.end()) bad("unknown state '" + v.get<std::string>() + "'");
  return it->second;
}

Alphabet read_alphabet(const json& j) {
  try {
    return Alphabet(string_list(j, "input_alphabet"));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

std::vector<bool> read_terminal(const json& j, const Common& c) {
  std::vector<bool> terminal(c.states.size(), false);
  if (!j.contains("terminal")) return terminal;
  for (const auto& name : j.at("terminal")) terminal[state_ref(c, name)] = true;
  return terminal;
}

MooreMachine read_moore(const json& j) {
  check_keys(j, {"kind", "input_alphabet", "output_alphabet", "states", "initial", "delta", "labels"});
  Alphabet in = read_alphabet(j.at("input_alphabet"));
  Common c = read_common(j);
  const std::size_t k = in.size();
  const std::size_t n = c.states.size();
  std::vector<std::optional<State>> delta(n * k);
  const json& d = j.at("delta");
  if (!d.is_object()) bad("delta must be an object");
  for (auto row = d.begin(); row != d.end(); ++row) {
    const State q = state_ref(c, row.key());
    if (!row.value().is_object()) bad("delta rows must be objects");
    for (auto cell = row.value().begin(); cell != row.value().end(); ++cell) {
      auto s = in.find(cell.key());
      if (!s) bad("unknown symbol '" + cell.key() + "' in delta");
      delta[q * k + *s] = state_ref(c, cell.value());
    }
  }
  std::vector<State> total;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (!delta[i]) bad("moore delta undefined for state '" + c.states[i / k] + "' on '" + in.label(i % k) + "'");
    total.push_back(*delta[i]);
  }
  std::vector<std::optional<Rational>> labels(n);
  const json& l = j.at("labels");
  if (!l.is_object()) bad("labels must be an object");
  for (auto it = l.begin(); it != l.end(); ++it) labels[state_ref(c, it.key())] = value_of(it.value());
  std::vector<Rational> flat;
  for (std::size_t q = 0; q < n; ++q) {
    if (!labels[q]) bad("state '" + c.states[q] + "' has no label");
    flat.push_back(*labels[q]);
  }
  try {
    return MooreMachine(std::move(in), std::move(c.output), c.initial, std::move(total), std::move(flat),
                        std::move(c.states));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

MealyMachine read_mealy(const json& j) {
  check_keys(j, {"kind", "input_alphabet", "output_alphabet", "states", "initial", "delta", "outputs"},
             {"terminal"});
  Alphabet in = read_alphabet(j.at("input_alphabet"));
  Common c = read_common(j);
  const std::size_t k = in.size();
  const std::size_t n = c.states.size();
  std::vector<std::optional<State>> target(n * k);
  std::vector<std::optional<Rational>> output(n * k);
  auto for_cells = [&](const json& table, const char* what, auto&& fn) {
    if (!table.is_object()) bad(std::string(what) + " must be an object");
    for (auto row = table.begin(); row != table.end(); ++row) {
      const State q = state_ref(c, row.key());
      if (!row.value().is_object()) bad(std::string(what) + " rows must be objects");
      for (auto cell = row.value().begin(); cell != row.value().end(); ++cell) {
        auto s = in.find(cell.key());
        if (!s) bad("unknown symbol '" + cell.key() + "' in " + what);
        fn(q * k + *s, cell.value());
      }
    }
  };
  for_cells(j.at("delta"), "delta", [&](std::size_t i, const json& v) { target[i] = state_ref(c, v); });
  for_cells(j.at("outputs"), "outputs", [&](std::size_t i, const json& v) { output[i] = value_of(v); });
  std::vector<std::optional<MealyMachine::Edge>> edges(n * k);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (target[i].has_value() != output[i].has_value())
      bad("transition of '" + c.states[i / k] + "' on '" + in.label(i % k) + "' needs both target and output");
    if (target[i]) edges[i] = MealyMachine::Edge{*target[i], *output[i]};
  }
  std::vector<bool> terminal = read_terminal(j, c);
  try {
    return MealyMachine(std::move(in), std::move(c.output), c.initial, std::move(edges), std::move(terminal),
                        std::move(c.states));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

GuardedMachine read_guarded(const json& j) {
  check_keys(j, {"kind", "propositions", "output_alphabet", "states", "initial", "edges"}, {"terminal"});
  GuardedMachine gm;
  gm.propositions = string_list(j.at("propositions"), "propositions");
  Common c = read_common(j);
  gm.output_alphabet = c.output;
  gm.state_names = c.states;
  gm.initial = c.initial;
  gm.terminal = read_terminal(j, c);
  if (!j.at("edges").is_array()) bad("edges must be an array");
  for (const auto& e : j.at("edges")) {
    check_keys(e, {"from", "guard", "to", "output"});
    if (!e.at("guard").is_string()) bad("guard must be a string");
    try {
      gm.edges.push_back({state_ref(c, e.at("from")), parse_guard(e.at("guard").get<std::string>(), gm.propositions),
                          state_ref(c, e.at("to")), value_of(e.at("output"))});
    } catch (const BadGuard& err) {
      bad(err.what());
    }
  }
  try {
    gm.validate();
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  return gm;
}

}  // namespace

ordered_json to_json(const MooreMachine& m) {
  const auto& in = m.input_alphabet();
  ordered_json j;
  j["kind"] = "moore";
  j["input_alphabet"] = in.labels();
  j["output_alphabet"] = outputs_json(m.output_alphabet());
  j["states"] = m.state_names();
  j["initial"] = m.state_name(m.initial());
  ordered_json delta = ordered_json::object();
  ordered_json labels = ordered_json::object();
  for (State q = 0; q < m.num_states(); ++q) {
    ordered_json row = ordered_json::object();
    for (Symbol s = 0; s < in.size(); ++s) row[in.label(s)] = m.state_name(m.next(q, s));
    delta[m.state_name(q)] = std::move(row);
    labels[m.state_name(q)] = m.label(q).str();
  }
  j["delta"] = std::move(delta);
  j["labels"] = std::move(labels);
  return j;
}

ordered_json to_json(const MealyMachine& m) {
  const auto& in = m.input_alphabet();
  ordered_json j;
  j["kind"] = "mealy";
  j["input_alphabet"] = in.labels();
  j["output_alphabet"] = outputs_json(m.output_alphabet());
  j["states"] = m.state_names();
  j["initial"] = m.state_name(m.initial());
  ordered_json delta = ordered_json::object();
  ordered_json outputs = ordered_json::object();
  ordered_json terminal = ordered_json::array();
  for (State q = 0; q < m.num_states(); ++q) {
    ordered_json drow = ordered_json::object();
    ordered_json orow = ordered_json::object();
    for (Symbol s = 0; s < in.size(); ++s) {
      if (const auto& e = m.edge(q, s)) {
        drow[in.label(s)] = m.state_name(e->target);
        orow[in.label(s)] = e->output.str();
      }
    }
    delta[m.state_name(q)] = std::move(drow);
    outputs[m.state_name(q)] = std::move(orow);
    if (m.is_terminal(q)) terminal.push_back(m.state_name(q));
  }
  j["delta"] = std::move(delta);
  j["outputs"] = std::move(outputs);
  j["terminal"] = std::move(terminal);
  return j;
}

ordered_json to_json(const GuardedMachine& m) {
  ordered_json j;
  j["kind"] = "guarded";
  j["propositions"] = m.propositions;
  j["output_alphabet"] = outputs_json(m.output_alphabet);
  j["states"] = m.state_names;
  j["initial"] = m.state_names.at(m.initial);
  ordered_json edges = ordered_json::array();
  for (const auto& e : m.edges) {
    ordered_json ej;
    ej["from"] = m.state_names.at(e.from);
    ej["guard"] = to_dnf(e.guard, m.propositions);
    ej["to"] = m.state_names.at(e.to);
    ej["output"] = e.output.str();
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  ordered_json terminal = ordered_json::array();
  for (std::size_t q = 0; q < m.terminal.size(); ++q)
    if (m.terminal[q]) terminal.push_back(m.state_names[q]);
  j["terminal"] = std::move(terminal);
  return j;
}

ordered_json to_json(const AnyMachine& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

AnyMachine machine_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) bad("missing string field 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "moore") return read_moore(j);
    if (kind == "mealy") return read_mealy(j);
    if (kind == "guarded") return read_guarded(j);
  } catch (const json::exception& e) {
    bad(e.what());
  } catch (const UnknownSymbol& e) {
    bad(e.what());
  } catch (const IncompleteMachine& e) {
    bad(e.what());
  }
  bad("unknown machine kind '" + kind + "'");
}

MooreMachine moore_from_json(const json& j) {
  AnyMachine m = machine_from_json(j);
  if (auto* moore = std::get_if<MooreMachine>(&m)) return std::move(*moore);
  bad("expected a moore machine");
}

std::string dump_machine(const AnyMachine& m) { return to_json(m).dump(2) + "\n"; }

AnyMachine parse_machine(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  return machine_from_json(j);
}

AnyMachine load_machine(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

void save_machine(const std::filesystem::path& path, const AnyMachine& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump_machine(m);
}

MooreMachine ground_truth(const AnyMachine& m, std::optional<Rational> halt_output) {
  if (const auto* moore = std::get_if<MooreMachine>(&m)) return *moore;
  MealyMachine rm = std::holds_alternative<MealyMachine>(m) ? std::get<MealyMachine>(m)
                                                              : expand(repair_nondeterminism(std::get<GuardedMachine>(m)));
  const Rational halt = halt_output ? *halt_output : rm.output_alphabet().front();
  return reward_machine_to_moore(rm, halt);
}

namespace {

template <class T>
const T& expect(const AnyMachine& m, const char* what) {
  if (const auto* x = std::get_if<T>(&m)) return *x;
  throw BadMachineFile(std::string("input must be a ") + what + " machine");
}

}  // namespace

AnyMachine convert_machine(const std::string& op, const AnyMachine& in, const std::optional<Rational>& halt,
                   const Propositions& props) {
  if (op == "complete_halt") {
    const auto& m = expect<MealyMachine>(in, "mealy");
    return complete_with_halt(m, halt ? *halt : m.output_alphabet().front());
  }
  if (op == "remove_halt") return remove_halt(expect<MealyMachine>(in, "mealy"), halt);
  if (op == "repair") return repair_nondeterminism(expect<GuardedMachine>(in, "guarded"));
  if (op == "expand") return expand(expect<GuardedMachine>(in, "guarded"));
  if (op == "moore2mealy") return moore_to_mealy(expect<MooreMachine>(in, "moore"));
  if (op == "mealy2moore") return mealy_to_moore(expect<MealyMachine>(in, "mealy"));
  if (op == "summarize") {
    const auto& m = expect<MealyMachine>(in, "mealy");
    if (props.empty()) throw BadConfig("summarize needs --props");
    return to_guarded(m, props);
  }
  if (op == "rm2moore") return ground_truth(in, halt);
  if (op == "moore2rm") return moore_to_reward_machine(expect<MooreMachine>(in, "moore"), halt);
  throw BadConfig("unknown --op '" + op + "'");
}


}  // namespace remap
