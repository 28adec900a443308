#include "remap/machine.hpp"

#include <algorithm>
#include <stdexcept>

#include "remap/errors.hpp"

namespace remap {

namespace {

std::vector<std::string> default_names(std::size_t n, std::vector<std::string> names) {
  if (names.empty()) {
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  }
  if (names.size() != n) throw std::invalid_argument("state name count does not match state count");
  return names;
}

void check_symbols(const Alphabet& in, const Sequence& s) {
  for (Symbol x : s)
    if (x >= in.size()) throw UnknownSymbol("symbol index " + std::to_string(x) + " outside input alphabet");
}

}  // namespace

MooreMachine::MooreMachine(Alphabet input, OutputAlphabet output, State initial,
                           std::vector<State> delta, std::vector<Rational> labels,
                           std::vector<std::string> state_names)
    : input_(std::move(input)),
      output_(std::move(output)),
      initial_(initial),
      delta_(std::move(delta)),
      labels_(std::move(labels)),
      names_(default_names(labels_.size(), std::move(state_names))) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("machine without states");
  if (input_.empty()) throw std::invalid_argument("empty input alphabet");
  if (initial_ >= n) throw std::invalid_argument("initial state out of range");
  if (delta_.size() != n * input_.size()) throw IncompleteMachine("transition table has wrong size");
  for (State t : delta_)
    if (t >= n) throw std::invalid_argument("transition target out of range");
  for (const auto& l : labels_)
    if (!output_index(output_, l)) throw std::invalid_argument("label " + l.str() + " not in output alphabet");
}

State MooreMachine::state_after(const Sequence& s) const {
  check_symbols(input_, s);
  State q = initial_;
  for (Symbol x : s) q = next(q, x);
  return q;
}

MealyMachine::MealyMachine(Alphabet input, OutputAlphabet output, State initial,
                           std::vector<std::optional<Edge>> edges, std::vector<bool> terminal,
                           std::vector<std::string> state_names)
    : input_(std::move(input)), output_(std::move(output)), initial_(initial), edges_(std::move(edges)) {
  if (input_.empty()) throw std::invalid_argument("empty input alphabet");
  if (edges_.size() % input_.size() != 0) throw std::invalid_argument("edge table has wrong size");
  const std::size_t n = edges_.size() / input_.size();
  if (n == 0) throw std::invalid_argument("machine without states");
  names_ = default_names(n, std::move(state_names));
  if (initial_ >= n) throw std::invalid_argument("initial state out of range");
  for (const auto& e : edges_) {
    if (!e) continue;
    if (e->target >= n) throw std::invalid_argument("transition target out of range");
    if (!output_index(output_, e->output))
      throw std::invalid_argument("output " + e->output.str() + " not in output alphabet");
  }
  terminal_ = terminal.empty() ? std::vector<bool>(n, false) : std::move(terminal);
  if (terminal_.size() != n) throw std::invalid_argument("terminal flag count does not match state count");
  for (State q = 0; q < n; ++q) {
    if (!terminal_[q]) continue;
    for (Symbol s = 0; s < input_.size(); ++s)
      if (edge(q, s)) throw std::invalid_argument("terminal state " + names_[q] + " has outgoing transitions");
  }
}

bool MealyMachine::is_complete() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.has_value(); });
}

std::vector<Rational> MealyMachine::trace(const Sequence& s) const {
  check_symbols(input_, s);
  std::vector<Rational> out;
  State q = initial_;
  for (Symbol x : s) {
    const auto& e = edge(q, x);
    if (!e) break;
    out.push_back(e->output);
    q = e->target;
  }
  return out;
}

std::optional<Rational> MealyMachine::run(const Sequence& s) const {
  auto outs = trace(s);
  if (s.empty() || outs.size() != s.size()) return std::nullopt;
  return outs.back();
}

bool operator==(const MealyMachine::Edge& a, const MealyMachine::Edge& b) {
  return a.target == b.target && a.output == b.output;
}

bool operator==(const MealyMachine& a, const MealyMachine& b) {
  return a.input_ == b.input_ && a.output_ == b.output_ && a.initial_ == b.initial_ &&
         a.edges_ == b.edges_ && a.terminal_ == b.terminal_;
}

}  // namespace remap
