#include <cmath>

#include "doctest.h"
#include "remap/automata.hpp"
#include "remap/errors.hpp"
#include "remap/harness.hpp"
#include "remap/teacher.hpp"
#include "support.hpp"

using namespace remap;

namespace {

// First hypothesis of the a*b walkthrough: ε-class 0, b-class 1, everything
// returns to the initial state after leaving b.
MooreMachine h1() {
  return MooreMachine(Alphabet({"a", "b"}), make_output_alphabet({Rational(0), Rational(1)}), 0, {0, 1, 0, 0},
                      {Rational(0), Rational(1)});
}

}  // namespace

TEST_CASE("preference queries") {
  const auto t = testing::astarb();
  const auto& in = t.input_alphabet();
  CHECK(pref_query(t, Sequence{}, in.parse_text("a")) == 0);
  CHECK(pref_query(t, Sequence{}, in.parse_text("b")) == -1);
  CHECK(pref_query(t, in.parse_text("b"), Sequence{}) == 1);
  for (const char* s : {"", "a", "bab", "aaab"}) CHECK(pref_query(t, in.parse_text(s), in.parse_text(s)) == 0);
  CHECK_THROWS_AS(pref_query(t, Sequence{9}, Sequence{}), UnknownSymbol);
}

TEST_CASE("exact equivalence") {
  const auto t = testing::astarb();
  const auto& in = t.input_alphabet();
  auto c = equivalence_query_exact(t, h1());
  REQUIRE(c);
  CHECK(c->sequence == in.parse_text("bab"));
  CHECK(c->value == Rational(0));

  CHECK_FALSE(equivalence_query_exact(t, t));
  CHECK_FALSE(equivalence_query_exact(t, minimize(t)));

  const MooreMachine zero(in, t.output_alphabet(), 0, {0, 0}, {Rational(0)});
  c = equivalence_query_exact(t, zero);
  REQUIRE(c);
  CHECK(c->sequence == in.parse_text("b"));
  CHECK(c->value == Rational(1));

  const MooreMachine other(Alphabet({"x", "y"}), t.output_alphabet(), 0, {0, 0}, {Rational(0)});
  CHECK_THROWS_AS(equivalence_query_exact(t, other), AlphabetMismatch);

  SUBCASE("returns the shortlex least disagreement, by brute force") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
      const auto truth = random_moore(4, 2, 2, rng);
      const auto h = random_moore(3, 2, 2, rng);
      const auto got = equivalence_query_exact(truth, h);
      std::optional<Sequence> want;
      std::vector<Sequence> level{Sequence{}};
      for (int len = 0; len <= 8 && !want; ++len) {
        for (const auto& w : level)
          if (truth.run(w) != h.run(w)) {
            want = w;
            break;
          }
        std::vector<Sequence> next;
        for (const auto& w : level)
          for (Symbol a = 0; a < 2; ++a) next.push_back(concat(w, a));
        level = std::move(next);
      }
      CHECK(got.has_value() == want.has_value());
      CHECK(got.has_value() == !isomorphic(truth, h));
      if (got && want) CHECK(got->sequence == *want);
    }
  }
}

TEST_CASE("pac equivalence") {
  const auto t = testing::astarb();
  std::mt19937_64 rng(1);
  CHECK_FALSE(equivalence_query_pac(t, h1(), 0, 0.2, rng));
  CHECK_FALSE(equivalence_query_pac(t, t, 1000, 0.2, rng));

  // Disagreement mass of h1 under the sampling distribution, by enumeration.
  double mass = 0.0;
  std::vector<Sequence> level{Sequence{}};
  for (int len = 0; len <= 12; ++len) {
    const double weight = 0.2 * std::pow(0.8, len) / std::pow(2.0, len);
    for (const auto& w : level)
      if (t.run(w) != h1().run(w)) mass += weight;
    std::vector<Sequence> next;
    for (const auto& w : level)
      for (Symbol a = 0; a < 2; ++a) next.push_back(concat(w, a));
    level = std::move(next);
  }
  const double predicted = 1.0 - std::pow(1.0 - mass, 500);
  CHECK(predicted >= 0.99);

  int found = 0;
  const int runs = 300;
  for (int seed = 0; seed < runs; ++seed) {
    std::mt19937_64 r(static_cast<std::uint64_t>(seed));
    auto c = equivalence_query_pac(t, h1(), 500, 0.2, r);
    if (c) {
      ++found;
      CHECK(t.run(c->sequence) == c->value);
      CHECK(h1().run(c->sequence) != c->value);
    }
  }
  CHECK(static_cast<double>(found) / runs >= 0.99);
}

TEST_CASE("sampling") {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(sample_sequence(3, 0.2, a) == sample_sequence(3, 0.2, b));
  std::mt19937_64 r(2);
  CHECK(sample_sequence(2, 1.0, r).empty());
  // Mean length of a geometric(0.2) counting failures is 4.
  double total = 0;
  int empties = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto s = sample_sequence(2, 0.2, r);
    total += static_cast<double>(s.size());
    empties += s.empty();
  }
  CHECK(total / 20000 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(empties / 20000.0 == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("seed splitting and configuration") {
  CHECK(split_seed(1, 0, SeedRole::teacher) == split_seed(1, 0, SeedRole::teacher));
  CHECK(split_seed(1, 0, SeedRole::teacher) != split_seed(1, 1, SeedRole::teacher));
  CHECK(split_seed(1, 0, SeedRole::teacher) != split_seed(1, 0, SeedRole::eval_set));
  CHECK(split_seed(1, 0, SeedRole::teacher) != split_seed(2, 0, SeedRole::teacher));

  TeacherConfig cfg;
  cfg.mode = TeacherMode::pac;
  CHECK_THROWS_AS(cfg.validate(), BadConfig);
  cfg.pac_samples = 10;
  cfg.validate();
  cfg.length_stop_prob = 0.0;
  CHECK_THROWS_AS(cfg.validate(), BadConfig);
  CHECK(parse_teacher_mode("pac") == TeacherMode::pac);
  CHECK_THROWS_AS(parse_teacher_mode("oracle"), BadConfig);

  SUBCASE("pac teacher with a fixed seed is reproducible") {
    TeacherConfig c;
    c.mode = TeacherMode::pac;
    c.pac_samples = 3;
    c.seed = 77;
    SimulatedTeacher t1(testing::astarb(), c), t2(testing::astarb(), c);
    for (int i = 0; i < 20; ++i) CHECK(t1.equivalence(h1()) == t2.equivalence(h1()));
  }
}
