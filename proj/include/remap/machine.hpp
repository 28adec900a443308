#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "remap/alphabet.hpp"
#include "remap/rational.hpp"

namespace remap {

using State = std::uint32_t;

// Complete deterministic Moore machine. Outputs live on states; the machine
// classifies a word by the label of the state it reaches, f(s) = L(δ(q0, s)).
// Immutable after construction.
class MooreMachine {
public:
  MooreMachine(Alphabet input, OutputAlphabet output, State initial, std::vector<State> delta,
               std::vector<Rational> labels, std::vector<std::string> state_names = {});

  std::size_t num_states() const noexcept { return labels_.size(); }
  State initial() const noexcept { return initial_; }
  const Alphabet& input_alphabet() const noexcept { return input_; }
  const OutputAlphabet& output_alphabet() const noexcept { return output_; }

  State next(State q, Symbol s) const { return delta_[q * input_.size() + s]; }
  const Rational& label(State q) const { return labels_[q]; }
  const std::string& state_name(State q) const { return names_[q]; }
  const std::vector<State>& delta_table() const noexcept { return delta_; }
  const std::vector<Rational>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& state_names() const noexcept { return names_; }

  // Throws UnknownSymbol for symbols outside the input alphabet.
  State state_after(const Sequence& s) const;
  Rational run(const Sequence& s) const { return labels_[state_after(s)]; }

private:
  Alphabet input_;
  OutputAlphabet output_;
  State initial_;
  std::vector<State> delta_;
  std::vector<Rational> labels_;
  std::vector<std::string> names_;
};

// Deterministic Mealy machine with outputs on transitions; this is the shape
// of a reward machine. Transitions may be undefined (partial machine);
// terminal states have no outgoing transitions.
class MealyMachine {
public:
  struct Edge {
    State target;
    Rational output;
  };

  MealyMachine(Alphabet input, OutputAlphabet output, State initial,
               std::vector<std::optional<Edge>> edges, std::vector<bool> terminal = {},
               std::vector<std::string> state_names = {});

  std::size_t num_states() const noexcept { return names_.size(); }
  State initial() const noexcept { return initial_; }
  const Alphabet& input_alphabet() const noexcept { return input_; }
  const OutputAlphabet& output_alphabet() const noexcept { return output_; }
  const std::optional<Edge>& edge(State q, Symbol s) const { return edges_[q * input_.size() + s]; }
  const std::vector<std::optional<Edge>>& edges() const noexcept { return edges_; }
  bool is_terminal(State q) const { return terminal_[q]; }
  const std::vector<bool>& terminal() const noexcept { return terminal_; }
  const std::string& state_name(State q) const { return names_[q]; }
  const std::vector<std::string>& state_names() const noexcept { return names_; }

  bool is_complete() const;
  // Outputs emitted along `s`; stops early (shorter result) at an undefined
  // transition. Throws UnknownSymbol.
  std::vector<Rational> trace(const Sequence& s) const;
  // Output of the last transition taken by a nonempty `s`, or nullopt if `s`
  // is empty or runs off the defined transitions.
  std::optional<Rational> run(const Sequence& s) const;

  friend bool operator==(const MealyMachine& a, const MealyMachine& b);

private:
  Alphabet input_;
  OutputAlphabet output_;
  State initial_;
  std::vector<std::optional<Edge>> edges_;
  std::vector<bool> terminal_;
  std::vector<std::string> names_;
};

bool operator==(const MealyMachine::Edge& a, const MealyMachine::Edge& b);

}  // namespace remap
