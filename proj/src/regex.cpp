#include "remap/regex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "remap/automata.hpp"
#include "remap/errors.hpp"

namespace remap {

namespace {

struct Nfa {
  struct Node {
    std::vector<std::size_t> eps;
    std::vector<std::pair<Symbol, std::size_t>> moves;
  };
  std::vector<Node> nodes;
  std::size_t start = 0;
  std::size_t accept = 0;

  std::size_t add() {
    nodes.emplace_back();
    return nodes.size() - 1;
  }
};

struct Fragment {
  std::size_t in;
  std::size_t out;
};

class RegexCompiler {
public:
  RegexCompiler(const std::string& text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Nfa compile() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty pattern");
    Fragment f = parse_alt();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    nfa_.start = f.in;
    nfa_.accept = f.out;
    return std::move(nfa_);
  }

private:
  Fragment epsilon() {
    const auto a = nfa_.add();
    const auto b = nfa_.add();
    nfa_.nodes[a].eps.push_back(b);
    return {a, b};
  }

  Fragment parse_alt() {
    Fragment left = parse_concat();
    while (accept('|')) {
      Fragment right = parse_concat();
      const auto a = nfa_.add();
      const auto b = nfa_.add();
      nfa_.nodes[a].eps = {left.in, right.in};
      nfa_.nodes[left.out].eps.push_back(b);
      nfa_.nodes[right.out].eps.push_back(b);
      left = {a, b};
    }
    return left;
  }

  Fragment parse_concat() {
    std::optional<Fragment> acc;
    for (;;) {
      skip_ws();
      if (pos_ == text_.size() || text_[pos_] == '|' || text_[pos_] == ')') break;
      Fragment f = parse_repeat();
      if (acc) {
        nfa_.nodes[acc->out].eps.push_back(f.in);
        acc->out = f.out;
      } else {
        acc = f;
      }
    }
    return acc ? *acc : epsilon();
  }

  Fragment parse_repeat() {
    Fragment f = parse_atom();
    for (;;) {
      if (accept('*')) {
        const auto a = nfa_.add();
        const auto b = nfa_.add();
        nfa_.nodes[a].eps = {f.in, b};
        nfa_.nodes[f.out].eps.insert(nfa_.nodes[f.out].eps.end(), {f.in, b});
        f = {a, b};
      } else if (accept('+')) {
        const auto b = nfa_.add();
        nfa_.nodes[f.out].eps.insert(nfa_.nodes[f.out].eps.end(), {f.in, b});
        f = {f.in, b};
      } else if (accept('?')) {
        const auto a = nfa_.add();
        const auto b = nfa_.add();
        nfa_.nodes[a].eps = {f.in, b};
        nfa_.nodes[f.out].eps.push_back(b);
        f = {a, b};
      } else {
        return f;
      }
    }
  }

  Fragment parse_atom() {
    skip_ws();
    if (accept('(')) {
      Fragment f = parse_alt();
      if (!accept(')')) fail("missing ')'");
      return f;
    }
    if (text_.compare(pos_, 2, "ε") == 0) {
      pos_ += 2;
      return epsilon();
    }
    // Longest alphabet label at this position.
    std::size_t best_len = 0;
    Symbol best = 0;
    for (Symbol s = 0; s < alphabet_.size(); ++s) {
      const auto& l = alphabet_.label(s);
      if (l.size() > best_len && text_.compare(pos_, l.size(), l) == 0) {
        best_len = l.size();
        best = s;
      }
    }
    if (best_len == 0) {
      if (pos_ < text_.size() && std::string("*+?)|").find(text_[pos_]) != std::string::npos)
        fail("operator '" + std::string(1, text_[pos_]) + "' without operand");
      fail("no alphabet symbol at offset " + std::to_string(pos_));
    }
    pos_ += best_len;
    const auto a = nfa_.add();
    const auto b = nfa_.add();
    nfa_.nodes[a].moves.emplace_back(best, b);
    return {a, b};
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw BadRegex(why + " in '" + text_ + "'");
  }

  const std::string& text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
  Nfa nfa_;
};

using NodeSet = std::vector<std::size_t>;  // sorted

NodeSet closure(const Nfa& nfa, NodeSet set) {
  std::vector<bool> in(nfa.nodes.size(), false);
  for (auto n : set) in[n] = true;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (auto t : nfa.nodes[set[i]].eps)
      if (!in[t]) {
        in[t] = true;
        set.push_back(t);
      }
  std::sort(set.begin(), set.end());
  return set;
}

// Complete DFA as (transition table, accepting flags); state 0 is initial.
struct Dfa {
  std::vector<std::size_t> delta;
  std::vector<bool> accepting;
};

Dfa determinize(const Nfa& nfa, std::size_t k) {
  std::map<NodeSet, std::size_t> index;
  std::vector<NodeSet> sets{closure(nfa, {nfa.start})};
  index.emplace(sets[0], 0);
  Dfa dfa;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      NodeSet next;
      for (auto n : sets[i])
        for (auto [sym, t] : nfa.nodes[n].moves)
          if (sym == s) next.push_back(t);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      next = closure(nfa, std::move(next));
      auto [it, fresh] = index.try_emplace(next, sets.size());
      if (fresh) sets.push_back(next);
      dfa.delta.push_back(it->second);
    }
    dfa.accepting.push_back(std::binary_search(sets[i].begin(), sets[i].end(), nfa.accept));
  }
  return dfa;
}

}  // namespace

MooreMachine from_regex_union(const std::vector<std::string>& components, const Alphabet& alphabet) {
  const std::size_t k = alphabet.size();
  std::vector<Dfa> dfas;
  for (const auto& c : components) dfas.push_back(determinize(RegexCompiler(c, alphabet).compile(), k));

  std::vector<Rational> outs;
  for (std::size_t i = 0; i <= components.size(); ++i) outs.emplace_back(static_cast<std::int64_t>(i));
  OutputAlphabet out = make_output_alphabet(std::move(outs));

  using Tuple = std::vector<std::size_t>;
  std::map<Tuple, State> index;
  std::vector<Tuple> tuples{Tuple(dfas.size(), 0)};
  index.emplace(tuples[0], 0);
  std::vector<State> delta;
  std::vector<Rational> labels;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    std::int64_t label = 0;
    for (std::size_t c = 0; c < dfas.size(); ++c)
      if (dfas[c].accepting[tuples[i][c]]) {
        label = static_cast<std::int64_t>(c + 1);
        break;
      }
    labels.emplace_back(label);
    for (Symbol s = 0; s < k; ++s) {
      Tuple next(dfas.size());
      for (std::size_t c = 0; c < dfas.size(); ++c) next[c] = dfas[c].delta[tuples[i][c] * k + s];
      auto [it, fresh] = index.try_emplace(next, static_cast<State>(tuples.size()));
      if (fresh) tuples.push_back(std::move(next));
      delta.push_back(it->second);
    }
  }
  return minimize(MooreMachine(alphabet, std::move(out), 0, std::move(delta), std::move(labels)));
}

}  // namespace remap
