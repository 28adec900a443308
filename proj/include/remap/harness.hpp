#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "remap/learner.hpp"
#include "remap/machine.hpp"
#include "remap/teacher.hpp"

namespace remap {

struct EvalSet {
  std::vector<Sequence> sequences;  // shortlex sorted, distinct
  bool capped = false;              // path enumeration hit the cap
};

constexpr std::size_t kPathCap = 10000;

// Random geometric-length words plus every word of length ≤ |Q| (iterative
// deepening, stopped once `path_cap` paths have been produced).
EvalSet gen_eval_set(const MooreMachine& truth, std::size_t n_random, std::uint64_t seed,
                     std::size_t path_cap = kPathCap, double stop_prob = 0.2);

// Fraction of `eval_set` classified identically. Throws AlphabetMismatch.
double accuracy(const MooreMachine& truth, const MooreMachine& learned, const std::vector<Sequence>& eval_set);

struct EvalReport {
  double accuracy = 0.0;
  bool isomorphic = false;
  std::size_t pref_queries = 0;
  std::size_t eq_queries = 0;
  std::size_t unique_sequences = 0;
  std::size_t max_counterexample_length = 0;
  TerminationTrace trace;
};

// One learning session against `truth`, scored on a fresh evaluation set.
EvalReport run_trial(const MooreMachine& truth, const TeacherConfig& config, std::size_t eval_random = 1000,
                     std::uint64_t eval_seed = 0);

struct TrialRecord {
  std::optional<std::uint64_t> samples_per_eq;  // nullopt = exact teacher
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  EvalReport report;
};

struct GridRow {
  std::optional<std::uint64_t> samples_per_eq;
  double fraction_isomorphic = 0.0;
  std::vector<TrialRecord> trials;
};

// For every samples-per-query setting, runs `trials` sessions with seeds
// split from `base_seed` and reports the isomorphic fraction. Trials run on
// up to `jobs` threads; results are ordered by trial index.
std::vector<GridRow> isomorphism_probability(const MooreMachine& truth,
                                             const std::vector<std::optional<std::uint64_t>>& grid,
                                             std::size_t trials, std::uint64_t base_seed, std::size_t jobs = 1,
                                             std::size_t eval_random = 1000);

struct ScalingPoint {
  std::size_t unique_sequences;
  std::size_t pref_queries;
  std::size_t alphabet_size;
  std::size_t target_states;
  std::size_t max_counterexample_length;
};

struct ScalingSummary {
  std::vector<ScalingPoint> points;
  bool law_holds = true;  // pref_queries == C(unique_sequences, 2) everywhere
  double residual = 0.0;  // sum of squared deviations from the closed form
};

std::size_t choose2(std::size_t n);

ScalingSummary scaling_stats(const std::vector<EvalReport>& reports, std::size_t alphabet_size,
                             std::size_t target_states);

// target,samples_per_eq,seed,accuracy,isomorphic,pref_queries,eq_queries,unique_sequences
void write_trials_csv(std::ostream& out, const std::string& target, const std::vector<GridRow>& rows,
                      bool header = true);
// One JSONL trace per trial: <dir>/<target>_<samples>_<trial>.jsonl
void write_trial_traces(const std::filesystem::path& dir, const std::string& target, const std::vector<GridRow>& rows);

std::string samples_label(const std::optional<std::uint64_t>& samples);

// Uniformly random complete Moore machine with `n_states` states over the
// first `n_inputs` of a, b, c, ... and outputs 0..n_outputs-1.
MooreMachine random_moore(std::size_t n_states, std::size_t n_inputs, std::size_t n_outputs, std::mt19937_64& rng);

}  // namespace remap
