#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "remap/constraints.hpp"
#include "remap/machine.hpp"
#include "remap/solver.hpp"
#include "remap/table.hpp"
#include "remap/teacher.hpp"

namespace remap {

enum class TraceKind { init, closure, consistency, eq_query };
const char* to_string(TraceKind kind);

struct TraceEvent {
  TraceKind kind;
  std::size_t n_states;
  std::size_t n_known;
  std::size_t pref_queries_so_far;
  std::size_t unique_sequences;
};
using TerminationTrace = std::vector<TraceEvent>;

nlohmann::ordered_json to_json(const TraceEvent& event);
// One JSON object per line.
std::string trace_to_jsonl(const TerminationTrace& trace);

struct Hypothesis {
  MooreMachine machine;
  std::map<std::vector<VarId>, State> row_to_state;
  Solution solution;
  std::size_t n_states = 0;
  std::size_t n_known = 0;
  std::size_t n_unknown = 0;
};

struct PreferenceRecord {
  Sequence s1;
  Sequence s2;
  int answer;
};

struct ValueRecord {
  Sequence sequence;
  Rational value;
};

struct LearnStats {
  std::size_t pref_queries = 0;
  std::size_t eq_queries = 0;
  std::size_t unique_sequences = 0;
  std::size_t max_representatives = 0;
  std::size_t max_counterexample_length = 0;
};

struct LearnResult {
  MooreMachine machine;
  TerminationTrace trace;
  LearnStats stats;
  std::vector<std::size_t> hypothesis_sizes;
};

// One REMAP session: a symbolic observation table filled by preference
// queries, closed and made consistent, turned into hypotheses that are
// checked by equivalence queries until one is accepted.
class RemapLearner {
public:
  RemapLearner(Alphabet input, OutputAlphabet output, Teacher& teacher);

  // Creates variables for unseen cell words and compares every new word with
  // every other known word, then unifies.
  void symbolic_fill();
  // Repairs inconsistency first, then closedness, until neither applies.
  void make_closed_and_consistent();
  Hypothesis make_hypothesis() const;
  void process_counterexample(const Counterexample& cex);
  // Full loop. Teacher inconsistencies surface as InconsistentTeacher with a
  // transcript of the session.
  LearnResult run();

  // Called after every unification (for invariant checks and live views).
  void on_unify(std::function<void(const RemapLearner&)> callback) { on_unify_ = std::move(callback); }

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const OutputAlphabet& output_alphabet() const noexcept { return output_; }
  const SymbolicTable& table() const noexcept { return table_; }
  const ConstraintStore& store() const noexcept { return store_; }
  const TerminationTrace& trace() const noexcept { return trace_; }
  const LearnStats& stats() const noexcept { return stats_; }
  const std::vector<PreferenceRecord>& preferences() const noexcept { return preferences_; }
  const std::vector<ValueRecord>& bindings() const noexcept { return bindings_; }
  // Words of Γ in the order their variables were created.
  const std::vector<Sequence>& context_words() const noexcept { return context_words_; }

  // Table, context classes and constraint dump, for inspection.
  nlohmann::ordered_json snapshot() const;
  std::string transcript() const;

private:
  void unify();
  void record(TraceKind kind, std::size_t n_states, std::size_t n_known);

  Alphabet input_;
  OutputAlphabet output_;
  Teacher& teacher_;
  SymbolicTable table_;
  ConstraintStore store_;
  std::vector<Sequence> context_words_;
  TerminationTrace trace_;
  LearnStats stats_;
  std::vector<PreferenceRecord> preferences_;
  std::vector<ValueRecord> bindings_;
  std::function<void(const RemapLearner&)> on_unify_;
};

LearnResult run_remap(const Alphabet& input, const OutputAlphabet& output, Teacher& teacher);

// True iff `h` classifies every recorded preference and value binding the
// way the teacher answered.
bool satisfies_records(const MooreMachine& h, const std::vector<PreferenceRecord>& preferences,
                       const std::vector<ValueRecord>& bindings);

}  // namespace remap
