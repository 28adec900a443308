#include "remap/teacher.hpp"

#include <deque>
#include <map>

#include "remap/errors.hpp"

namespace remap {

const char* to_string(TeacherMode mode) {
  switch (mode) {
    case TeacherMode::exact: return "exact";
    case TeacherMode::pac: return "pac";
    case TeacherMode::interactive: return "interactive";
  }
  return "?";
}

TeacherMode parse_teacher_mode(const std::string& text) {
  if (text == "exact") return TeacherMode::exact;
  if (text == "pac") return TeacherMode::pac;
  if (text == "interactive") return TeacherMode::interactive;
  throw BadConfig("unknown teacher mode '" + text + "'");
}

void TeacherConfig::validate() const {
  if (mode == TeacherMode::pac && !pac_samples) throw BadConfig("pac teacher needs a sample count");
  if (mode != TeacherMode::pac && pac_samples) throw BadConfig("sample count only applies to the pac teacher");
  if (!(length_stop_prob > 0.0 && length_stop_prob <= 1.0)) throw BadConfig("length stop probability must be in (0,1]");
}

int pref_query(const MooreMachine& truth, const Sequence& s1, const Sequence& s2) {
  const Rational a = truth.run(s1);
  const Rational b = truth.run(s2);
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

namespace {

void check_alphabets(const MooreMachine& truth, const MooreMachine& h) {
  if (!(truth.input_alphabet() == h.input_alphabet())) throw AlphabetMismatch("hypothesis input alphabet differs");
  if (truth.output_alphabet() != h.output_alphabet()) throw AlphabetMismatch("hypothesis output alphabet differs");
}

}  // namespace

std::optional<Counterexample> equivalence_query_exact(const MooreMachine& truth, const MooreMachine& h) {
  check_alphabets(truth, h);
  const std::size_t k = truth.input_alphabet().size();
  // Breadth-first over the product in symbol order visits product states in
  // shortlex order of their least access word.
  std::map<std::pair<State, State>, Sequence> seen;
  std::deque<std::pair<State, State>> queue;
  const std::pair<State, State> start{truth.initial(), h.initial()};
  seen.emplace(start, Sequence{});
  queue.push_back(start);
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    const Sequence& word = seen.at(cur);
    if (truth.label(cur.first) != h.label(cur.second)) return Counterexample{word, truth.label(cur.first)};
    for (Symbol a = 0; a < k; ++a) {
      const std::pair<State, State> nxt{truth.next(cur.first, a), h.next(cur.second, a)};
      if (seen.count(nxt)) continue;
      seen.emplace(nxt, concat(seen.at(cur), a));
      queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

Sequence sample_sequence(std::size_t alphabet_size, double stop_prob, std::mt19937_64& rng) {
  std::bernoulli_distribution stop(stop_prob);
  std::uniform_int_distribution<Symbol> symbol(0, static_cast<Symbol>(alphabet_size - 1));
  Sequence s;
  while (!stop(rng)) s.push_back(symbol(rng));
  return s;
}

std::optional<Counterexample> equivalence_query_pac(const MooreMachine& truth, const MooreMachine& h,
                                                    std::uint64_t samples, double stop_prob, std::mt19937_64& rng) {
  check_alphabets(truth, h);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sequence s = sample_sequence(truth.input_alphabet().size(), stop_prob, rng);
    Rational want = truth.run(s);
    if (h.run(s) != want) return Counterexample{std::move(s), want};
  }
  return std::nullopt;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t trial, SeedRole role) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ trial) ^ static_cast<std::uint64_t>(role));
}

SimulatedTeacher::SimulatedTeacher(MooreMachine truth, TeacherConfig config)
    : truth_(std::move(truth)), config_(config), rng_(config.seed) {
  config_.validate();
  if (config_.mode == TeacherMode::interactive) throw BadConfig("simulated teacher cannot be interactive");
}

int SimulatedTeacher::preference(const Sequence& s1, const Sequence& s2) { return pref_query(truth_, s1, s2); }

std::optional<Counterexample> SimulatedTeacher::equivalence(const MooreMachine& hypothesis) {
  if (config_.mode == TeacherMode::pac)
    return equivalence_query_pac(truth_, hypothesis, *config_.pac_samples, config_.length_stop_prob, rng_);
  return equivalence_query_exact(truth_, hypothesis);
}

}  // namespace remap
