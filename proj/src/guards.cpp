#include "remap/guards.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "remap/errors.hpp"

namespace remap {

Alphabet proposition_alphabet(const Propositions& props) {
  if (props.size() > kMaxPropositions) throw BadGuard("too many propositions");
  std::vector<std::string> labels;
  for (std::uint32_t mask = 0; mask < (1u << props.size()); ++mask) {
    std::string l = "{";
    bool first = true;
    for (std::size_t i = 0; i < props.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      if (!first) l += ",";
      l += props[i];
      first = false;
    }
    labels.push_back(l + "}");
  }
  return Alphabet(std::move(labels));
}

std::uint32_t parse_proposition_set(std::string_view label, const Propositions& props) {
  if (label.size() < 2 || label.front() != '{' || label.back() != '}')
    throw BadGuard("symbol '" + std::string(label) + "' is not a proposition set");
  std::string_view body = label.substr(1, label.size() - 2);
  std::uint32_t mask = 0;
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view name = body.substr(0, comma);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    auto it = std::find(props.begin(), props.end(), name);
    if (it == props.end()) throw BadGuard("unknown proposition '" + std::string(name) + "' in " + std::string(label));
    mask |= 1u << (it - props.begin());
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return mask;
}

Guard Guard::all(std::size_t num_props) {
  Guard g(num_props);
  g.sat_.assign(g.sat_.size(), true);
  return g;
}

Guard Guard::of_minterms(std::size_t num_props, const std::vector<std::uint32_t>& masks) {
  Guard g(num_props);
  for (auto m : masks) g.sat_.at(m) = true;
  return g;
}

bool Guard::empty() const { return std::none_of(sat_.begin(), sat_.end(), [](bool b) { return b; }); }

std::vector<std::uint32_t> Guard::minterms() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < sat_.size(); ++m)
    if (sat_[m]) out.push_back(m);
  return out;
}

Guard Guard::operator&(const Guard& o) const {
  Guard g = *this;
  for (std::size_t i = 0; i < sat_.size(); ++i) g.sat_[i] = sat_[i] && o.sat_[i];
  return g;
}

Guard Guard::operator|(const Guard& o) const {
  Guard g = *this;
  for (std::size_t i = 0; i < sat_.size(); ++i) g.sat_[i] = sat_[i] || o.sat_[i];
  return g;
}

Guard Guard::operator~() const {
  Guard g = *this;
  g.sat_.flip();
  return g;
}

namespace {

class GuardParser {
public:
  GuardParser(std::string_view text, const Propositions& props) : text_(text), props_(props) {}

  Guard parse() {
    Guard g = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

private:
  Guard parse_or() {
    Guard g = parse_and();
    while (accept("||") || accept("|") || accept("∨")) g = g | parse_and();
    return g;
  }

  Guard parse_and() {
    Guard g = parse_not();
    while (accept("&&") || accept("&") || accept("∧")) g = g & parse_not();
    return g;
  }

  Guard parse_not() {
    if (accept("!") || accept("~") || accept("¬")) return ~parse_not();
    return parse_atom();
  }

  Guard parse_atom() {
    if (accept("(")) {
      Guard g = parse_or();
      if (!accept(")")) fail("expected ')'");
      return g;
    }
    if (accept("⊤")) return Guard::all(props_.size());
    if (accept("⊥")) return Guard(props_.size());
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a proposition");
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "true") return Guard::all(props_.size());
    if (name == "false") return Guard(props_.size());
    auto it = std::find(props_.begin(), props_.end(), name);
    if (it == props_.end()) fail("unknown proposition '" + std::string(name) + "'");
    const auto bit = static_cast<std::uint32_t>(it - props_.begin());
    Guard g(props_.size());
    for (std::uint32_t m = 0; m < g.num_assignments(); ++m)
      if (m & (1u << bit)) g.set(m);
    return g;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw BadGuard(why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  const Propositions& props_;
  std::size_t pos_ = 0;
};

}  // namespace

Guard parse_guard(std::string_view text, const Propositions& props) {
  if (props.size() > kMaxPropositions) throw BadGuard("too many propositions");
  return GuardParser(text, props).parse();
}

std::string to_dnf(const Guard& g, const Propositions& props) {
  if (g.empty()) return "⊥";
  if (props.empty()) return "⊤";
  std::string out;
  for (auto m : g.minterms()) {
    if (!out.empty()) out += "∨";
    out += "(";
    for (std::size_t i = 0; i < props.size(); ++i) {
      if (i) out += "∧";
      if (!(m & (1u << i))) out += "¬";
      out += props[i];
    }
    out += ")";
  }
  return out;
}

void GuardedMachine::validate() const {
  const std::size_t n = num_states();
  if (n == 0) throw std::invalid_argument("guarded machine without states");
  if (initial >= n) throw std::invalid_argument("initial state out of range");
  if (propositions.size() > kMaxPropositions) throw std::invalid_argument("too many propositions");
  if (!terminal.empty() && terminal.size() != n) throw std::invalid_argument("terminal flag count mismatch");
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.guard.num_assignments() != (std::size_t{1} << propositions.size()))
      throw std::invalid_argument("guard arity does not match proposition count");
    if (!output_index(output_alphabet, e.output))
      throw std::invalid_argument("edge output " + e.output.str() + " not in output alphabet");
    if (!terminal.empty() && terminal[e.from])
      throw std::invalid_argument("terminal state " + state_names[e.from] + " has outgoing edges");
  }
}

std::vector<std::pair<std::size_t, std::size_t>> GuardedMachine::conflicts() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& a = edges[i];
      const auto& b = edges[j];
      if (a.from != b.from || (a.to == b.to && a.output == b.output)) continue;
      if (!(a.guard & b.guard).empty()) out.emplace_back(i, j);
    }
  return out;
}

MealyMachine expand(const GuardedMachine& gm) {
  gm.validate();
  if (!gm.is_deterministic()) throw UnsupportedPattern("machine is nondeterministic; repair it first");
  Alphabet in = proposition_alphabet(gm.propositions);
  const std::size_t k = in.size();
  std::vector<std::optional<MealyMachine::Edge>> edges(gm.num_states() * k);
  for (const auto& e : gm.edges)
    for (auto m : e.guard.minterms()) edges[e.from * k + m] = MealyMachine::Edge{e.to, e.output};
  return MealyMachine(std::move(in), gm.output_alphabet, gm.initial, std::move(edges),
                      gm.terminal.empty() ? std::vector<bool>(gm.num_states(), false) : gm.terminal,
                      gm.state_names);
}

namespace {

// Target and output reached from `q` on every assignment in `g`; nullopt if
// they are undefined or not uniform.
std::optional<std::pair<State, Rational>> uniform_step(const GuardedMachine& gm, State q, const Guard& g) {
  std::optional<std::pair<State, Rational>> result;
  for (auto m : g.minterms()) {
    std::optional<std::pair<State, Rational>> here;
    for (const auto& e : gm.edges) {
      if (e.from != q || !e.guard.contains(m)) continue;
      if (here && (here->first != e.to || here->second != e.output)) return std::nullopt;
      here = std::make_pair(e.to, e.output);
    }
    if (!here || (result && *result != *here)) return std::nullopt;
    result = here;
  }
  return result;
}

}  // namespace

GuardedMachine repair_nondeterminism(const GuardedMachine& gm) {
  gm.validate();
  auto conflicts = gm.conflicts();
  if (conflicts.empty()) return gm;

  GuardedMachine out = gm;
  if (out.terminal.empty()) out.terminal.assign(out.num_states(), false);
  std::vector<bool> seen_source(gm.num_states(), false);
  for (auto [i, j] : conflicts) {
    const GuardedEdge ea = gm.edges[i];
    const GuardedEdge eb = gm.edges[j];
    const State q1 = ea.from;
    if (seen_source[q1]) throw UnsupportedPattern("more than one overlapping guard pair at state " + gm.state_names[q1]);
    seen_source[q1] = true;
    if (ea.to == eb.to || ea.to == q1 || eb.to == q1)
      throw UnsupportedPattern("overlap at " + gm.state_names[q1] + " is not the two-branch pattern");
    if (ea.output != eb.output)
      throw UnsupportedPattern("overlapping edges at " + gm.state_names[q1] + " emit different outputs");

    const Guard& phi_a = ea.guard;
    const Guard& phi_b = eb.guard;
    auto via_a = uniform_step(gm, ea.to, phi_b);  // q2 --φb--> q4
    auto via_b = uniform_step(gm, eb.to, phi_a);  // q3 --φa--> q4
    if (!via_a || !via_b || via_a->first != via_b->first || via_a->second != via_b->second)
      throw UnsupportedPattern("branches from " + gm.state_names[q1] + " do not rejoin at a common state");
    const State q4 = via_a->first;

    const auto q5 = static_cast<State>(out.num_states());
    std::size_t n = q5;
    std::string name = "q" + std::to_string(n);
    while (std::find(out.state_names.begin(), out.state_names.end(), name) != out.state_names.end())
      name = "q" + std::to_string(++n);
    out.state_names.push_back(name);
    out.terminal.push_back(false);

    out.edges[i].guard = phi_a & ~phi_b;
    out.edges[j].guard = phi_b & ~phi_a;
    const Guard either = phi_a | phi_b;
    const Guard idle = ~either;
    // Self-loop output follows what q2 emits while waiting, when that is uniform.
    Rational idle_output = gm.output_alphabet.front();
    if (!idle.empty())
      if (auto wait = uniform_step(gm, ea.to, idle)) idle_output = wait->second;
    out.edges.push_back({q1, phi_a & phi_b, q5, ea.output});
    out.edges.push_back({q5, either, q4, via_a->second});
    if (!idle.empty()) out.edges.push_back({q5, idle, q5, idle_output});
  }
  std::erase_if(out.edges, [](const GuardedEdge& e) { return e.guard.empty(); });
  if (!out.is_deterministic()) throw UnsupportedPattern("repair did not yield a deterministic machine");
  return out;
}

std::vector<SummaryEdge> summarize_transitions(const MealyMachine& m, const Propositions& props) {
  const std::size_t k = m.input_alphabet().size();
  std::vector<std::uint32_t> mask_of(k);
  for (Symbol s = 0; s < k; ++s) mask_of[s] = parse_proposition_set(m.input_alphabet().label(s), props);

  std::vector<SummaryEdge> out;
  for (State q = 0; q < m.num_states(); ++q) {
    std::map<std::pair<State, Rational>, std::size_t> group;
    for (Symbol s = 0; s < k; ++s) {
      const auto& e = m.edge(q, s);
      if (!e) continue;
      auto [it, fresh] = group.try_emplace({e->target, e->output}, out.size());
      if (fresh) out.push_back(SummaryEdge{q, e->target, e->output, {}, {}});
      out[it->second].minterms.push_back(mask_of[s]);
    }
  }
  for (auto& e : out) {
    std::sort(e.minterms.begin(), e.minterms.end());
    e.minterms.erase(std::unique(e.minterms.begin(), e.minterms.end()), e.minterms.end());
    e.label = to_dnf(Guard::of_minterms(props.size(), e.minterms), props);
  }
  std::stable_sort(out.begin(), out.end(), [](const SummaryEdge& a, const SummaryEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    return a.minterms.front() < b.minterms.front();
  });
  return out;
}

GuardedMachine to_guarded(const MealyMachine& m, const Propositions& props) {
  GuardedMachine gm;
  gm.propositions = props;
  gm.output_alphabet = m.output_alphabet();
  gm.state_names = m.state_names();
  gm.initial = m.initial();
  gm.terminal = m.terminal();
  for (auto& e : summarize_transitions(m, props))
    gm.edges.push_back({e.from, Guard::of_minterms(props.size(), e.minterms), e.to, e.output});
  return gm;
}

}  // namespace remap
