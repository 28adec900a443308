#include "remap/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "remap/errors.hpp"

namespace remap {

namespace {

std::vector<State> reachable_bfs(const MooreMachine& m) {
  const std::size_t k = m.input_alphabet().size();
  std::vector<bool> seen(m.num_states(), false);
  std::vector<State> order{m.initial()};
  seen[m.initial()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      const State t = m.next(order[i], s);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

}  // namespace

MooreMachine minimize(const MooreMachine& m) {
  const std::size_t k = m.input_alphabet().size();
  const std::vector<State> reach = reachable_bfs(m);

  // Moore-style partition refinement; blocks indexed per reachable state.
  std::vector<std::size_t> block(m.num_states(), 0);
  {
    std::map<Rational, std::size_t> by_label;
    for (State q : reach) block[q] = by_label.try_emplace(m.label(q), by_label.size()).first->second;
  }
  std::size_t num_blocks = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> sigs;
    std::vector<std::size_t> refined(m.num_states(), 0);
    for (State q : reach) {
      std::vector<std::size_t> sig{block[q]};
      for (Symbol s = 0; s < k; ++s) sig.push_back(block[m.next(q, s)]);
      refined[q] = sigs.try_emplace(std::move(sig), sigs.size()).first->second;
    }
    const bool stable = sigs.size() == num_blocks;
    num_blocks = sigs.size();
    block = std::move(refined);
    if (stable) break;
  }

  // Canonical numbering: BFS over blocks from the initial block.
  std::vector<State> rep_of_block(num_blocks);
  for (State q : reach) rep_of_block[block[q]] = q;
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> canon(num_blocks, unset);
  std::vector<std::size_t> order{block[m.initial()]};
  canon[order[0]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State q = rep_of_block[order[i]];
    for (Symbol s = 0; s < k; ++s) {
      const std::size_t b = block[m.next(q, s)];
      if (canon[b] == unset) {
        canon[b] = order.size();
        order.push_back(b);
      }
    }
  }
  std::vector<State> delta(num_blocks * k);
  std::vector<Rational> labels(num_blocks);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State q = rep_of_block[order[i]];
    labels[i] = m.label(q);
    for (Symbol s = 0; s < k; ++s) delta[i * k + s] = static_cast<State>(canon[block[m.next(q, s)]]);
  }
  return MooreMachine(m.input_alphabet(), m.output_alphabet(), 0, std::move(delta), std::move(labels));
}

bool same_structure(const MooreMachine& a, const MooreMachine& b) {
  return a.input_alphabet() == b.input_alphabet() && a.initial() == b.initial() &&
         a.delta_table() == b.delta_table() && a.labels() == b.labels();
}

bool isomorphic(const MooreMachine& a, const MooreMachine& b) {
  if (!(a.input_alphabet() == b.input_alphabet()))
    throw AlphabetMismatch("machines have different input alphabets");
  return same_structure(minimize(a), minimize(b));
}

MealyMachine moore_to_mealy(const MooreMachine& m) {
  const std::size_t k = m.input_alphabet().size();
  std::vector<std::optional<MealyMachine::Edge>> edges(m.num_states() * k);
  for (State q = 0; q < m.num_states(); ++q)
    for (Symbol s = 0; s < k; ++s) {
      const State t = m.next(q, s);
      edges[q * k + s] = MealyMachine::Edge{t, m.label(t)};
    }
  return MealyMachine(m.input_alphabet(), m.output_alphabet(), m.initial(), std::move(edges), {},
                      m.state_names());
}

MooreMachine mealy_to_moore(const MealyMachine& m, std::optional<Rational> initial_label) {
  if (!m.is_complete()) throw IncompleteMachine("mealy_to_moore needs a complete machine; use complete_with_halt");
  const std::size_t k = m.input_alphabet().size();
  const Rational init = initial_label.value_or(m.output_alphabet().front());
  OutputAlphabet out = m.output_alphabet();
  if (!output_index(out, init)) {
    out.push_back(init);
    out = make_output_alphabet(std::move(out));
  }

  using Pair = std::pair<State, Rational>;
  std::map<Pair, State> index;
  std::vector<Pair> pairs{{m.initial(), init}};
  index.emplace(pairs[0], 0);
  std::vector<State> delta;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const State q = pairs[i].first;
    for (Symbol s = 0; s < k; ++s) {
      const auto& e = *m.edge(q, s);
      Pair p{e.target, e.output};
      auto [it, fresh] = index.try_emplace(p, static_cast<State>(pairs.size()));
      if (fresh) pairs.push_back(p);
      delta.push_back(it->second);
    }
  }

  std::vector<std::size_t> copies(m.num_states(), 0);
  for (const auto& p : pairs) ++copies[p.first];
  std::vector<Rational> labels;
  std::vector<std::string> names;
  for (const auto& [q, o] : pairs) {
    labels.push_back(o);
    std::string name = m.state_name(q);
    if (copies[q] > 1) {
      std::string tag = o.str();
      std::replace(tag.begin(), tag.end(), '/', '_');
      name += "_" + tag;
    }
    names.push_back(std::move(name));
  }
  return MooreMachine(m.input_alphabet(), std::move(out), 0, std::move(delta), std::move(labels),
                      std::move(names));
}

MealyMachine complete_with_halt(const MealyMachine& m, const Rational& halt_output) {
  if (m.is_complete()) return m;
  const std::size_t k = m.input_alphabet().size();
  const std::size_t n = m.num_states();
  const auto halt = static_cast<State>(n);

  OutputAlphabet out = m.output_alphabet();
  if (!output_index(out, halt_output)) {
    out.push_back(halt_output);
    out = make_output_alphabet(std::move(out));
  }
  std::vector<std::optional<MealyMachine::Edge>> edges = m.edges();
  for (auto& e : edges)
    if (!e) e = MealyMachine::Edge{halt, halt_output};
  for (Symbol s = 0; s < k; ++s) edges.push_back(MealyMachine::Edge{halt, halt_output});

  std::vector<std::string> names = m.state_names();
  std::string halt_name = "HALT";
  while (std::find(names.begin(), names.end(), halt_name) != names.end()) halt_name += "_";
  names.push_back(halt_name);
  return MealyMachine(m.input_alphabet(), std::move(out), m.initial(), std::move(edges),
                      std::vector<bool>(n + 1, false), std::move(names));
}

MealyMachine remove_halt(const MealyMachine& m, std::optional<Rational> halt_output) {
  const std::size_t k = m.input_alphabet().size();
  const std::size_t n = m.num_states();
  std::optional<State> halt;
  for (State q = 0; q < n; ++q) {
    if (q == m.initial()) continue;
    std::optional<Rational> loop_out;
    bool absorbing = true;
    for (Symbol s = 0; s < k && absorbing; ++s) {
      const auto& e = m.edge(q, s);
      if (!e || e->target != q || (loop_out && *loop_out != e->output)) absorbing = false;
      else loop_out = e->output;
    }
    if (!absorbing || (halt_output && *loop_out != *halt_output)) continue;
    if (!halt || m.state_name(q) == "HALT" || m.state_name(*halt) != "HALT") halt = q;
  }
  if (!halt) return m;

  auto renumber = [&](State q) { return q < *halt ? q : q - 1; };
  std::vector<std::optional<MealyMachine::Edge>> edges;
  std::vector<bool> terminal;
  std::vector<std::string> names;
  for (State q = 0; q < n; ++q) {
    if (q == *halt) continue;
    bool any = false;
    for (Symbol s = 0; s < k; ++s) {
      const auto& e = m.edge(q, s);
      if (e && e->target != *halt) {
        edges.push_back(MealyMachine::Edge{renumber(e->target), e->output});
        any = true;
      } else {
        edges.emplace_back();
      }
    }
    terminal.push_back(!any);
    names.push_back(m.state_name(q));
  }
  return MealyMachine(m.input_alphabet(), m.output_alphabet(), renumber(m.initial()), std::move(edges),
                      std::move(terminal), std::move(names));
}

MooreMachine reward_machine_to_moore(const MealyMachine& rm, const Rational& halt_output) {
  return mealy_to_moore(complete_with_halt(rm, halt_output));
}

MealyMachine moore_to_reward_machine(const MooreMachine& m, std::optional<Rational> halt_output) {
  return remove_halt(moore_to_mealy(minimize(m)), halt_output);
}

}  // namespace remap
