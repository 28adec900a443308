#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "remap/guards.hpp"
#include "remap/machine.hpp"

namespace remap {

using AnyMachine = std::variant<MooreMachine, MealyMachine, GuardedMachine>;

// Machine file schema (keys written in this order):
//   {"kind":"moore"|"mealy"|"guarded", "input_alphabet":[...] | "propositions":[...],
//    "output_alphabet":["0","1",...], "states":[...], "initial":"q0",
//    moore:   "delta":{"q0":{"a":"q0",...}}, "labels":{"q0":"0"}
//    mealy:   "delta":{...}, "outputs":{"q0":{"a":"0"}}, "terminal":[...]
//    guarded: "edges":[{"from":"q0","guard":"a&!b","to":"q1","output":"1"}], "terminal":[...]}
// Output values are strings "p" or "p/q". Unknown fields are rejected.
nlohmann::ordered_json to_json(const MooreMachine& m);
nlohmann::ordered_json to_json(const MealyMachine& m);
nlohmann::ordered_json to_json(const GuardedMachine& m);
nlohmann::ordered_json to_json(const AnyMachine& m);

// Throws BadMachineFile.
AnyMachine machine_from_json(const nlohmann::json& j);
MooreMachine moore_from_json(const nlohmann::json& j);

std::string dump_machine(const AnyMachine& m);
AnyMachine parse_machine(std::string_view text);
AnyMachine load_machine(const std::filesystem::path& path);
void save_machine(const std::filesystem::path& path, const AnyMachine& m);

// Ground-truth Moore machine for a teacher: Moore files are used as is;
// reward machines (mealy or guarded, repaired if nondeterministic) are
// completed with HALT emitting `halt_output` (default: least output) and
// converted.
MooreMachine ground_truth(const AnyMachine& m, std::optional<Rational> halt_output = {});

// Named file conversion: complete_halt, remove_halt, repair, expand,
// moore2mealy, mealy2moore, summarize (needs `props`), rm2moore, moore2rm.
AnyMachine convert_machine(const std::string& op, const AnyMachine& in, const std::optional<Rational>& halt,
                           const Propositions& props);

}  // namespace remap
