#include "remap/learner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "remap/errors.hpp"

namespace remap {

const char* to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::init: return "init";
    case TraceKind::closure: return "closure";
    case TraceKind::consistency: return "consistency";
    case TraceKind::eq_query: return "eq_query";
  }
  return "?";
}

nlohmann::ordered_json to_json(const TraceEvent& e) {
  return {{"kind", to_string(e.kind)},
          {"n_states", e.n_states},
          {"n_known", e.n_known},
          {"pref_queries_so_far", e.pref_queries_so_far},
          {"unique_sequences", e.unique_sequences}};
}

std::string trace_to_jsonl(const TerminationTrace& trace) {
  std::string out;
  for (const auto& e : trace) out += to_json(e).dump() + "\n";
  return out;
}

RemapLearner::RemapLearner(Alphabet input, OutputAlphabet output, Teacher& teacher)
    : input_(std::move(input)), output_(std::move(output)), teacher_(teacher), table_(input_.size()) {
  if (input_.size() == 0) throw BadConfig("empty input alphabet");
  if (output_.empty()) throw BadConfig("empty output alphabet");
  if (!std::is_sorted(output_.begin(), output_.end())) throw BadConfig("output alphabet must be sorted");
}

void RemapLearner::unify() {
  store_.unify(table_);
  const std::size_t reps = store_.representatives().size();
  stats_.max_representatives = std::max(stats_.max_representatives, reps);
  // Distinct classes are pairwise ordered, so more classes than outputs
  // cannot be labelled; stop before the table grows without bound.
  if (reps > output_.size())
    throw Unsatisfiable(std::to_string(reps) + " classes but only " + std::to_string(output_.size()) + " output values");
  if (on_unify_) on_unify_(*this);
}

void RemapLearner::symbolic_fill() {
  const std::size_t old_count = context_words_.size();
  for (const auto& w : table_.cell_words()) {
    if (table_.lookup(w)) continue;
    table_.assign(w, store_.fresh_var());
    context_words_.push_back(w);
  }
  const std::size_t total = context_words_.size();
  if (total == old_count) return;

  auto ask = [&](std::size_t i, std::size_t j) {
    const Sequence& s1 = context_words_[i];
    const Sequence& s2 = context_words_[j];
    const int p = teacher_.preference(s1, s2);
    if (p < -1 || p > 1) throw InvalidAnswer("preference answer must be -1, 0 or +1");
    store_.record_preference(*table_.lookup(s1), *table_.lookup(s2), p);
    preferences_.push_back({s1, s2, p});
    ++stats_.pref_queries;
  };
  // New words against each other, then each new word against every old one.
  for (std::size_t i = old_count; i < total; ++i)
    for (std::size_t j = i + 1; j < total; ++j) ask(i, j);
  for (std::size_t i = old_count; i < total; ++i)
    for (std::size_t j = 0; j < old_count; ++j) ask(i, j);

  stats_.unique_sequences = total;
  unify();
}

void RemapLearner::record(TraceKind kind, std::size_t n_states, std::size_t n_known) {
  trace_.push_back({kind, n_states, n_known, stats_.pref_queries, context_words_.size()});
}

void RemapLearner::make_closed_and_consistent() {
  for (;;) {
    const auto cons = is_consistent(table_, store_);
    if (!cons.consistent) {
      const auto& w = *cons.witness;
      table_.add_suffix(concat(Sequence{w.symbol}, w.suffix));
      symbolic_fill();
      record(TraceKind::consistency, table_.distinct_rows(), store_.num_known());
      continue;
    }
    const auto closed = is_closed(table_, store_);
    if (!closed.closed) {
      table_.add_prefix(concat(*closed.prefix, *closed.symbol));
      symbolic_fill();
      record(TraceKind::closure, table_.distinct_rows(), store_.num_known());
      continue;
    }
    return;
  }
}

Hypothesis RemapLearner::make_hypothesis() const {
  std::map<std::vector<VarId>, State> row_to_state;
  std::vector<const Sequence*> access;
  for (const auto& s : table_.prefixes()) {
    auto [it, fresh] = row_to_state.try_emplace(table_.row(s), static_cast<State>(access.size()));
    if (fresh) access.push_back(&s);
  }
  const std::size_t n = access.size();
  const std::size_t k = input_.size();

  const auto reps = store_.representatives();
  Solution solution = solve(store_, reps, output_);

  std::vector<State> delta(n * k);
  std::vector<Rational> labels(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (Symbol a = 0; a < k; ++a) {
      auto it = row_to_state.find(table_.row(concat(*access[q], a)));
      if (it == row_to_state.end()) throw NotUnified("hypothesis requested from a table that is not closed");
      delta[q * k + a] = it->second;
    }
    labels[q] = solution.at(*table_.cell(*access[q], Sequence{}));
  }
  const State initial = row_to_state.at(table_.row(Sequence{}));

  Hypothesis h{MooreMachine(input_, output_, initial, std::move(delta), std::move(labels)), std::move(row_to_state),
               std::move(solution), n, 0, 0};
  for (const auto& r : reps)
    if (store_.value_of(r)) ++h.n_known;
  h.n_unknown = reps.size() - h.n_known;
  return h;
}

void RemapLearner::process_counterexample(const Counterexample& cex) {
  for (Symbol a : cex.sequence)
    if (a >= input_.size()) throw UnknownSymbol("counterexample symbol outside the input alphabet");
  if (!output_index(output_, cex.value)) throw InvalidAnswer("counterexample value " + cex.value.str() + " is not an output");
  stats_.max_counterexample_length = std::max(stats_.max_counterexample_length, cex.sequence.size());
  table_.add_prefix(cex.sequence);
  symbolic_fill();
  store_.bind_value(*table_.lookup(cex.sequence), cex.value);
  bindings_.push_back({cex.sequence, cex.value});
  unify();
}

LearnResult RemapLearner::run() {
  std::vector<std::size_t> sizes;
  try {
    symbolic_fill();
    record(TraceKind::init, table_.distinct_rows(), store_.num_known());
    for (;;) {
      make_closed_and_consistent();
      Hypothesis h = make_hypothesis();
      sizes.push_back(h.n_states);
      auto cex = teacher_.equivalence(h.machine);
      ++stats_.eq_queries;
      record(TraceKind::eq_query, h.n_states, h.n_known);
      if (!cex) return LearnResult{std::move(h.machine), trace_, stats_, std::move(sizes)};
      process_counterexample(*cex);
    }
  } catch (const ValueConflict& e) {
    throw InconsistentTeacher(std::string(e.what()) + "\n" + transcript());
  } catch (const CyclicOrder& e) {
    throw InconsistentTeacher(std::string(e.what()) + "\n" + transcript());
  } catch (const Unsatisfiable& e) {
    throw InconsistentTeacher(std::string(e.what()) + "\n" + transcript());
  }
}

std::string RemapLearner::transcript() const {
  std::ostringstream out;
  out << "preference answers:\n";
  for (const auto& p : preferences_)
    out << "  (" << input_.format(p.s1) << ", " << input_.format(p.s2) << ") -> " << p.answer << "\n";
  out << "counterexamples:\n";
  for (const auto& b : bindings_) out << "  " << input_.format(b.sequence) << " := " << b.value.str() << "\n";
  out << "constraints:\n" << store_.dump();
  return out.str();
}

nlohmann::ordered_json RemapLearner::snapshot() const {
  auto words = [&](const std::vector<Sequence>& ws) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& w : ws) arr.push_back(input_.labels_of(w));
    return arr;
  };
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& w : context_words_) {
    const VarId v = store_.find(*table_.lookup(w));
    nlohmann::ordered_json cell{{"sequence", input_.labels_of(w)}, {"var", v.str()}};
    if (auto value = store_.value_of(v)) cell["value"] = value->str();
    cells.push_back(std::move(cell));
  }
  auto inequalities = nlohmann::ordered_json::array();
  for (const auto& [lo, hi] : store_.inequalities()) inequalities.push_back({lo.str(), hi.str()});
  return {{"prefixes", words(table_.prefixes())},
          {"suffixes", words(table_.suffixes())},
          {"cells", std::move(cells)},
          {"inequalities", std::move(inequalities)},
          {"constraints", store_.dump()},
          {"pref_queries", stats_.pref_queries},
          {"eq_queries", stats_.eq_queries}};
}

LearnResult run_remap(const Alphabet& input, const OutputAlphabet& output, Teacher& teacher) {
  return RemapLearner(input, output, teacher).run();
}

bool satisfies_records(const MooreMachine& h, const std::vector<PreferenceRecord>& preferences,
                       const std::vector<ValueRecord>& bindings) {
  for (const auto& p : preferences)
    if (pref_query(h, p.s1, p.s2) != p.answer) return false;
  for (const auto& b : bindings)
    if (h.run(b.sequence) != b.value) return false;
  return true;
}

}  // namespace remap
