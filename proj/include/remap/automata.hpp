#pragma once

#include <optional>

#include "remap/machine.hpp"

namespace remap {

// Minimal equivalent machine, restricted to reachable states and numbered by
// BFS from the initial state with symbols visited in alphabet order. Two
// machines classify identically iff their minimized forms are equal.
MooreMachine minimize(const MooreMachine& m);

// Structural equality of delta tables, labels, and initial state (names ignored).
bool same_structure(const MooreMachine& a, const MooreMachine& b);

// Throws AlphabetMismatch if the input alphabets differ.
bool isomorphic(const MooreMachine& a, const MooreMachine& b);

// output(q, σ) = label(δ(q, σ)); same states.
MealyMachine moore_to_mealy(const MooreMachine& m);

// Output-splitting construction over reachable (state, last output) pairs.
// The initial pair carries `initial_label` (default: least output value),
// since a Mealy machine says nothing about the empty word.
// Throws IncompleteMachine on partial input.
MooreMachine mealy_to_moore(const MealyMachine& m, std::optional<Rational> initial_label = {});

// Routes every undefined transition to one new absorbing "HALT" state that
// emits `halt_output` on all of its self-loops. A complete machine is
// returned unchanged. `halt_output` joins the output alphabet if missing.
MealyMachine complete_with_halt(const MealyMachine& m, const Rational& halt_output);

// Inverse of complete_with_halt: finds the non-initial absorbing state whose
// self-loops all emit one output (matching `halt_output` when given), drops
// it and every transition into it, and marks states left without transitions
// terminal. Prefers a state named "HALT"; otherwise the highest-numbered
// candidate. Returns the input unchanged if there is no candidate.
MealyMachine remove_halt(const MealyMachine& m, std::optional<Rational> halt_output = {});

// Reward machine (possibly partial) to the complete Moore machine a teacher
// uses as ground truth.
MooreMachine reward_machine_to_moore(const MealyMachine& rm, const Rational& halt_output);
// Learned Moore machine back to a reward machine: minimize, convert, drop HALT.
MealyMachine moore_to_reward_machine(const MooreMachine& m, std::optional<Rational> halt_output = {});

}  // namespace remap
