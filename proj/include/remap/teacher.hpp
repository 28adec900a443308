#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "remap/alphabet.hpp"
#include "remap/machine.hpp"

namespace remap {

// Strong feedback: a word the hypothesis misclassifies, with its true value.
struct Counterexample {
  Sequence sequence;
  Rational value;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

// Oracle the learner talks to.
class Teacher {
public:
  virtual ~Teacher() = default;
  // -1 if f(s1) < f(s2), 0 if equal, +1 if f(s1) > f(s2).
  virtual int preference(const Sequence& s1, const Sequence& s2) = 0;
  // nullopt when the hypothesis is accepted.
  virtual std::optional<Counterexample> equivalence(const MooreMachine& hypothesis) = 0;
};

enum class TeacherMode { exact, pac, interactive };

const char* to_string(TeacherMode mode);
TeacherMode parse_teacher_mode(const std::string& text);  // throws BadConfig

struct TeacherConfig {
  TeacherMode mode = TeacherMode::exact;
  std::optional<std::uint64_t> pac_samples;  // required iff mode == pac
  double length_stop_prob = 0.2;
  std::uint64_t seed = 0;

  // Throws BadConfig.
  void validate() const;
};

int pref_query(const MooreMachine& truth, const Sequence& s1, const Sequence& s2);

// Shortest, then lexicographically least, word on which h and truth differ.
// Throws AlphabetMismatch.
std::optional<Counterexample> equivalence_query_exact(const MooreMachine& truth, const MooreMachine& h);

// Draws up to `samples` random words and reports the first disagreement.
// Throws AlphabetMismatch.
std::optional<Counterexample> equivalence_query_pac(const MooreMachine& truth, const MooreMachine& h,
                                                    std::uint64_t samples, double stop_prob, std::mt19937_64& rng);

// Word whose length is geometric (P(len = k) = p(1-p)^k, so ε is possible)
// with symbols uniform over the alphabet.
Sequence sample_sequence(std::size_t alphabet_size, double stop_prob, std::mt19937_64& rng);

// Deterministic seed derivation from (base seed, trial index, role tag) via
// splitmix64, so every stream in an experiment is reproducible from one seed.
enum class SeedRole : std::uint64_t { teacher = 1, eval_set = 2, target = 3 };
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t trial, SeedRole role);

// Answers from a ground-truth machine; exact or PAC equivalence.
class SimulatedTeacher : public Teacher {
public:
  SimulatedTeacher(MooreMachine truth, TeacherConfig config);

  int preference(const Sequence& s1, const Sequence& s2) override;
  std::optional<Counterexample> equivalence(const MooreMachine& hypothesis) override;

  const MooreMachine& truth() const noexcept { return truth_; }

private:
  MooreMachine truth_;
  TeacherConfig config_;
  std::mt19937_64 rng_;
};

}  // namespace remap
