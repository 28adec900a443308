#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "remap/machine.hpp"

namespace remap {

// Propositions P; the induced input alphabet is 2^P with symbol index equal to
// the bitmask of true propositions (bit i = propositions[i]).
using Propositions = std::vector<std::string>;

constexpr std::size_t kMaxPropositions = 12;

// Labels "{}", "{a}", "{b}", "{a,b}", ... in mask order.
Alphabet proposition_alphabet(const Propositions& props);
// Parses a brace-set symbol label such as "{a,b}" into its mask. Throws BadGuard.
std::uint32_t parse_proposition_set(std::string_view label, const Propositions& props);

// A Boolean formula over P, stored extensionally as the set of satisfying
// assignments.
class Guard {
public:
  Guard() = default;
  explicit Guard(std::size_t num_props) : sat_(std::size_t{1} << num_props, false) {}
  static Guard all(std::size_t num_props);
  static Guard of_minterms(std::size_t num_props, const std::vector<std::uint32_t>& masks);

  std::size_t num_assignments() const noexcept { return sat_.size(); }
  bool contains(std::uint32_t mask) const { return sat_[mask]; }
  void set(std::uint32_t mask, bool v = true) { sat_[mask] = v; }
  bool empty() const;
  std::vector<std::uint32_t> minterms() const;

  Guard operator&(const Guard& o) const;
  Guard operator|(const Guard& o) const;
  Guard operator~() const;
  friend bool operator==(const Guard&, const Guard&) = default;

private:
  std::vector<bool> sat_;
};

// Grammar: or := and ('|' and)*; and := not ('&' not)*; not := '!' not | atom;
// atom := identifier | 'true' | 'false' | '(' or ')'. The Unicode connectives
// ∨ ∧ ¬ ⊤ ⊥ are accepted as synonyms. Throws BadGuard.
Guard parse_guard(std::string_view text, const Propositions& props);

// Unminimized sum of minterms, e.g. "(a∧¬b)∨(a∧b)". "⊥" for the empty guard,
// "⊤" when P is empty.
std::string to_dnf(const Guard& g, const Propositions& props);

struct GuardedEdge {
  State from;
  Guard guard;
  State to;
  Rational output;
};

// Reward machine with formula-labelled transitions, as reward machines are
// usually written. May be nondeterministic (overlapping guards).
struct GuardedMachine {
  Propositions propositions;
  OutputAlphabet output_alphabet;
  std::vector<std::string> state_names;
  State initial = 0;
  std::vector<GuardedEdge> edges;
  std::vector<bool> terminal;

  std::size_t num_states() const noexcept { return state_names.size(); }
  // Throws std::invalid_argument on malformed structure.
  void validate() const;
  // Pairs of edge indices leaving the same state whose guards overlap and
  // disagree on target or output.
  std::vector<std::pair<std::size_t, std::size_t>> conflicts() const;
  bool is_deterministic() const { return conflicts().empty(); }
};

// Symbol-level Mealy machine over proposition_alphabet(). Throws
// UnsupportedPattern when the machine is nondeterministic.
MealyMachine expand(const GuardedMachine& gm);

// Removes the two-guard overlap pattern: q1 --φa--> q2, q1 --φb--> q3 with
// φa∧φb satisfiable and q2 --φb--> q4, q3 --φa--> q4. Adds q5 with
// q1 --φa∧φb--> q5, q5 --φa∨φb--> q4, q5 --¬(φa∨φb)--> q5 and re-guards the
// original edges with φa∧¬φb and φb∧¬φa. Deterministic input is returned
// unchanged; any other overlap raises UnsupportedPattern.
GuardedMachine repair_nondeterminism(const GuardedMachine& gm);

struct SummaryEdge {
  State from;
  State to;
  Rational output;
  std::vector<std::uint32_t> minterms;
  std::string label;  // to_dnf of the minterms
};

// Merges symbol edges that share (source, target, output) into one edge
// labelled with the sum-of-minterms DNF. Symbol labels must be brace sets over
// `props`. Ordered by source state, then by first minterm.
std::vector<SummaryEdge> summarize_transitions(const MealyMachine& m, const Propositions& props);
GuardedMachine to_guarded(const MealyMachine& m, const Propositions& props);

}  // namespace remap
