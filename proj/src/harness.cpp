#include "remap/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "remap/automata.hpp"
#include "remap/errors.hpp"

namespace remap {

EvalSet gen_eval_set(const MooreMachine& truth, std::size_t n_random, std::uint64_t seed, std::size_t path_cap,
                     double stop_prob) {
  std::set<Sequence> words;
  std::mt19937_64 rng(seed);
  const std::size_t k = truth.input_alphabet().size();
  for (std::size_t i = 0; i < n_random; ++i) words.insert(sample_sequence(k, stop_prob, rng));

  EvalSet out;
  std::vector<Sequence> frontier{Sequence{}};
  std::size_t produced = 0;
  for (std::size_t depth = 0; depth <= truth.num_states() && !frontier.empty(); ++depth) {
    std::vector<Sequence> next;
    for (const auto& w : frontier) {
      if (produced == path_cap) {
        out.capped = true;
        break;
      }
      words.insert(w);
      ++produced;
      if (depth < truth.num_states())
        for (Symbol a = 0; a < k; ++a) next.push_back(concat(w, a));
    }
    if (out.capped) break;
    frontier = std::move(next);
  }
  out.sequences.assign(words.begin(), words.end());
  std::sort(out.sequences.begin(), out.sequences.end(), shortlex_less);
  return out;
}

double accuracy(const MooreMachine& truth, const MooreMachine& learned, const std::vector<Sequence>& eval_set) {
  if (!(truth.input_alphabet() == learned.input_alphabet())) throw AlphabetMismatch("input alphabets differ");
  if (eval_set.empty()) return 1.0;
  std::size_t agree = 0;
  for (const auto& s : eval_set)
    if (truth.run(s) == learned.run(s)) ++agree;
  return static_cast<double>(agree) / static_cast<double>(eval_set.size());
}

EvalReport run_trial(const MooreMachine& truth, const TeacherConfig& config, std::size_t eval_random,
                     std::uint64_t eval_seed) {
  SimulatedTeacher teacher(truth, config);
  LearnResult result = run_remap(truth.input_alphabet(), truth.output_alphabet(), teacher);
  EvalReport r;
  r.isomorphic = isomorphic(result.machine, truth);
  r.accuracy = accuracy(truth, result.machine, gen_eval_set(truth, eval_random, eval_seed).sequences);
  r.pref_queries = result.stats.pref_queries;
  r.eq_queries = result.stats.eq_queries;
  r.unique_sequences = result.stats.unique_sequences;
  r.max_counterexample_length = result.stats.max_counterexample_length;
  r.trace = std::move(result.trace);
  return r;
}

std::vector<GridRow> isomorphism_probability(const MooreMachine& truth,
                                             const std::vector<std::optional<std::uint64_t>>& grid,
                                             std::size_t trials, std::uint64_t base_seed, std::size_t jobs,
                                             std::size_t eval_random) {
  if (trials == 0) throw BadConfig("trials must be at least 1");
  std::vector<GridRow> rows(grid.size());
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    rows[g].samples_per_eq = grid[g];
    rows[g].trials.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) tasks.emplace_back(g, t);
  }

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < tasks.size();) {
      const auto [g, t] = tasks[i];
      try {
        TeacherConfig cfg;
        cfg.mode = grid[g] ? TeacherMode::pac : TeacherMode::exact;
        cfg.pac_samples = grid[g];
        cfg.seed = split_seed(base_seed, t, SeedRole::teacher);
        TrialRecord& rec = rows[g].trials[t];
        rec.samples_per_eq = grid[g];
        rec.trial = t;
        rec.seed = cfg.seed;
        rec.report = run_trial(truth, cfg, eval_random, split_seed(base_seed, t, SeedRole::eval_set));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& row : rows) {
    std::size_t iso = 0;
    for (const auto& rec : row.trials) iso += rec.report.isomorphic ? 1 : 0;
    row.fraction_isomorphic = static_cast<double>(iso) / static_cast<double>(trials);
  }
  return rows;
}

std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

ScalingSummary scaling_stats(const std::vector<EvalReport>& reports, std::size_t alphabet_size,
                             std::size_t target_states) {
  ScalingSummary s;
  for (const auto& r : reports) {
    s.points.push_back({r.unique_sequences, r.pref_queries, alphabet_size, target_states, r.max_counterexample_length});
    const double d = static_cast<double>(r.pref_queries) - static_cast<double>(choose2(r.unique_sequences));
    s.residual += d * d;
    if (r.pref_queries != choose2(r.unique_sequences)) s.law_holds = false;
  }
  return s;
}

std::string samples_label(const std::optional<std::uint64_t>& samples) {
  return samples ? std::to_string(*samples) : "exact";
}

void write_trials_csv(std::ostream& out, const std::string& target, const std::vector<GridRow>& rows, bool header) {
  if (header) out << "target,samples_per_eq,seed,accuracy,isomorphic,pref_queries,eq_queries,unique_sequences\n";
  char acc[32];
  for (const auto& row : rows)
    for (const auto& rec : row.trials) {
      std::snprintf(acc, sizeof acc, "%.6f", rec.report.accuracy);
      out << target << ',' << samples_label(rec.samples_per_eq) << ',' << rec.seed << ',' << acc << ','
          << (rec.report.isomorphic ? "true" : "false") << ',' << rec.report.pref_queries << ','
          << rec.report.eq_queries << ',' << rec.report.unique_sequences << '\n';
    }
}

void write_trial_traces(const std::filesystem::path& dir, const std::string& target, const std::vector<GridRow>& rows) {
  std::filesystem::create_directories(dir);
  for (const auto& row : rows)
    for (const auto& rec : row.trials) {
      const auto path = dir / (target + "_" + samples_label(rec.samples_per_eq) + "_" + std::to_string(rec.trial) + ".jsonl");
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + path.string());
      f << trace_to_jsonl(rec.report.trace);
    }
}

MooreMachine random_moore(std::size_t n_states, std::size_t n_inputs, std::size_t n_outputs, std::mt19937_64& rng) {
  if (n_states == 0 || n_inputs == 0 || n_inputs > 26 || n_outputs == 0) throw BadConfig("bad random machine shape");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n_inputs; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  OutputAlphabet out;
  for (std::size_t i = 0; i < n_outputs; ++i) out.emplace_back(static_cast<std::int64_t>(i));
  std::uniform_int_distribution<State> pick_state(0, static_cast<State>(n_states - 1));
  std::uniform_int_distribution<std::size_t> pick_out(0, n_outputs - 1);
  std::vector<State> delta(n_states * n_inputs);
  for (auto& d : delta) d = pick_state(rng);
  std::vector<Rational> lab(n_states);
  for (auto& l : lab) l = out[pick_out(rng)];
  return MooreMachine(Alphabet(labels), out, 0, std::move(delta), std::move(lab));
}

}  // namespace remap
