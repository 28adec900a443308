#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <regex>

#include "doctest.h"
#include "remap/automata.hpp"
#include "remap/errors.hpp"
#include "remap/guards.hpp"
#include "remap/harness.hpp"
#include "remap/machine_io.hpp"
#include "remap/regex.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace remap;

namespace {

using testing::for_all_words;

MooreMachine bstara() {
  // b*a: 1 on members.
  return MooreMachine(Alphabet({"a", "b"}), make_output_alphabet({Rational(0), Rational(1)}), 0, {1, 0, 2, 2, 2, 2},
                      {Rational(0), Rational(1), Rational(0)});
}

MooreMachine permuted(const MooreMachine& m, std::mt19937_64& rng) {
  std::vector<State> perm(m.num_states());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::size_t k = m.input_alphabet().size();
  std::vector<State> delta(m.num_states() * k);
  std::vector<Rational> labels(m.num_states());
  for (State q = 0; q < m.num_states(); ++q) {
    labels[perm[q]] = m.label(q);
    for (Symbol a = 0; a < k; ++a) delta[perm[q] * k + a] = perm[m.next(q, a)];
  }
  return MooreMachine(m.input_alphabet(), m.output_alphabet(), perm[m.initial()], delta, labels);
}

}  // namespace

TEST_CASE("run on the a*b machine") {
  const auto m = testing::astarb();
  const auto& in = m.input_alphabet();
  CHECK(m.run(Sequence{}) == Rational(0));
  CHECK(m.run(in.parse_text("b")) == Rational(1));
  CHECK(m.run(in.parse_text("aab")) == Rational(1));
  CHECK(m.run(in.parse_text("bab")) == Rational(0));
  CHECK_THROWS_AS(m.run(Sequence{7}), UnknownSymbol);
  CHECK_THROWS_AS(in.parse_text("c"), UnknownSymbol);
}

TEST_CASE("alphabet formatting") {
  const Alphabet ab({"a", "b"});
  CHECK(ab.format(Sequence{}) == "ε");
  CHECK(ab.format(Sequence{1, 0, 1}) == "bab");
  CHECK(ab.parse_text("ε").empty());
  const Alphabet props = proposition_alphabet({"p", "q"});
  CHECK(props.labels() == std::vector<std::string>{"{}", "{p}", "{q}", "{p,q}"});
  CHECK(props.format(Sequence{1, 3}) == "{p} {p,q}");
  CHECK(props.parse_text("{p} {p,q}") == Sequence{1, 3});
  CHECK(shortlex_less(Sequence{1}, Sequence{0, 0}));
  CHECK(shortlex_less(Sequence{0, 1}, Sequence{1, 0}));
}

TEST_CASE("minimize") {
  SUBCASE("redundant duplicate state is merged") {
    // States 1 and 2 are indistinguishable copies.
    const MooreMachine m(Alphabet({"a"}), make_output_alphabet({Rational(0), Rational(1)}), 0, {1, 2, 1},
                         {Rational(0), Rational(1), Rational(1)});
    CHECK(minimize(m).num_states() == m.num_states() - 1);
  }
  SUBCASE("idempotent and language preserving on random machines") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
      const auto m = random_moore(6, 1 + i % 3, 3, rng);
      const auto mm = minimize(m);
      CHECK(same_structure(minimize(mm), mm));
      const std::size_t depth = m.input_alphabet().size() == 3 ? 7 : 10;
      for_all_words(m.input_alphabet().size(), 0, depth, [&](const Sequence& s) {
        if (m.run(s) != mm.run(s)) FAIL("minimize changed the language");
      });
    }
  }
  SUBCASE("unreachable states are dropped") {
    const MooreMachine m(Alphabet({"a"}), make_output_alphabet({Rational(0), Rational(1)}), 0, {0, 1},
                         {Rational(0), Rational(1)});
    CHECK(minimize(m).num_states() == 1);
  }
}

TEST_CASE("isomorphic") {
  std::mt19937_64 rng(3);
  const auto m = testing::astarb();
  CHECK(isomorphic(m, permuted(m, rng)));
  CHECK_FALSE(isomorphic(m, bstara()));
  CHECK(m.run(Sequence{0}) != bstara().run(Sequence{0}));
  const MooreMachine other(Alphabet({"x", "y"}), m.output_alphabet(), 0, {0, 0}, {Rational(0)});
  CHECK_THROWS_AS(isomorphic(m, other), AlphabetMismatch);

  SUBCASE("equivalence relation over random triples") {
    for (int i = 0; i < 50; ++i) {
      const auto a = random_moore(3, 2, 2, rng);
      const auto b = i % 2 ? permuted(a, rng) : random_moore(3, 2, 2, rng);
      const auto c = i % 3 ? permuted(b, rng) : random_moore(3, 2, 2, rng);
      CHECK(isomorphic(a, a));
      CHECK(isomorphic(a, b) == isomorphic(b, a));
      if (isomorphic(a, b) && isomorphic(b, c)) CHECK(isomorphic(a, c));
      bool same = true;
      for_all_words(2, 0, 6, [&](const Sequence& s) { same = same && a.run(s) == b.run(s); });
      CHECK(same == isomorphic(a, b));
    }
  }
}

TEST_CASE("moore and mealy conversions") {
  SUBCASE("a*b round trip agrees on all words up to length 8") {
    const auto m = testing::astarb();
    const auto mealy = moore_to_mealy(m);
    CHECK(mealy.num_states() == 3);
    const auto back = mealy_to_moore(mealy);
    for_all_words(2, 1, 8, [&](const Sequence& s) {
      CHECK(*mealy.run(s) == m.run(s));
      CHECK(back.run(s) == m.run(s));
    });
    CHECK(isomorphic(back, m));
  }
  SUBCASE("single state stays single state") {
    const MooreMachine one(Alphabet({"a", "b", "c"}), make_output_alphabet({Rational(2)}), 0, {0, 0, 0},
                           {Rational(2)});
    CHECK(moore_to_mealy(one).num_states() == 1);
    CHECK(mealy_to_moore(moore_to_mealy(one)).num_states() == 1);
  }
  SUBCASE("incomplete machine is rejected") {
    const auto rm = std::get<MealyMachine>(load_machine(testing::fixture("rm_astarb.json")));
    CHECK_THROWS_AS(mealy_to_moore(rm), IncompleteMachine);
  }
  SUBCASE("mealy machines with output splitting") {
    // One state, output depends on the symbol: Moore form needs a state per output.
    const MealyMachine m(Alphabet({"a", "b"}), make_output_alphabet({Rational(0), Rational(1)}), 0,
                         {MealyMachine::Edge{0, Rational(0)}, MealyMachine::Edge{0, Rational(1)}});
    const auto moore = mealy_to_moore(m);
    CHECK(moore.num_states() == 2);
    for_all_words(2, 1, 6, [&](const Sequence& s) { CHECK(moore.run(s) == *m.run(s)); });
  }
}

TEST_CASE("HALT completion and removal") {
  const auto rm = std::get<MealyMachine>(load_machine(testing::fixture("rm_astarb.json")));
  const auto complete = complete_with_halt(rm, Rational(0));
  CHECK(complete.num_states() == rm.num_states() + 1);
  CHECK(complete.is_complete());
  CHECK(complete.state_name(2) == "HALT");
  CHECK(complete_with_halt(complete, Rational(0)) == complete);
  CHECK(remove_halt(complete) == rm);

  const auto moore = reward_machine_to_moore(rm, Rational(0));
  CHECK(moore.num_states() == 3);
  CHECK(isomorphic(moore, testing::astarb()));

  const auto back = moore_to_reward_machine(testing::astarb());
  CHECK(back.num_states() == 2);
  CHECK(back.edge(back.initial(), 1)->output == Rational(1));
  CHECK(back.is_terminal(back.edge(back.initial(), 1)->target));
}

TEST_CASE("regex union") {
  const Alphabet ab({"a", "b"});
  SUBCASE("a*b") {
    const auto m = from_regex_union({"a*b"}, ab);
    CHECK(m.run(ab.parse_text("b")) == Rational(1));
    CHECK(m.run(ab.parse_text("ab")) == Rational(1));
    CHECK(m.run(ab.parse_text("ba")) == Rational(0));
    CHECK(m.run(Sequence{}) == Rational(0));
    CHECK(isomorphic(m, testing::astarb()));
  }
  SUBCASE("no components") {
    const auto m = from_regex_union({}, ab);
    CHECK(m.num_states() == 1);
    CHECK(m.label(0) == Rational(0));
  }
  SUBCASE("lowest index wins, checked against std::regex") {
    const std::vector<std::vector<std::string>> cases = {
        {"a*b", "b*a"}, {"(ab)*", "a(a|b)*"}, {"ε|a+", "b?a*", "(a|b)*bb(a|b)*"}, {"a*b", "a*b"}};
    for (const auto& comps : cases) {
      const auto m = from_regex_union(comps, ab);
      CHECK(m.output_alphabet().size() == comps.size() + 1);
      std::vector<std::regex> oracles;
      for (auto c : comps) {
        for (std::size_t p; (p = c.find("ε")) != std::string::npos;) c.replace(p, std::string("ε").size(), "()");
        oracles.emplace_back(c);
      }
      for_all_words(2, 0, 6, [&](const Sequence& s) {
        const std::string text = s.empty() ? "" : ab.format(s);
        std::int64_t want = 0;
        for (std::size_t k = 0; k < oracles.size() && want == 0; ++k)
          if (std::regex_match(text, oracles[k])) want = static_cast<std::int64_t>(k + 1);
        CHECK_MESSAGE(m.run(s) == Rational(want), text);
      });
    }
  }
  SUBCASE("f(a) for [a*b, b*a]") {
    const auto m = from_regex_union({"a*b", "b*a"}, ab);
    CHECK(m.run(ab.parse_text("a")) == Rational(2));
    CHECK(m.run(ab.parse_text("aab")) == Rational(1));
    CHECK(m.run(ab.parse_text("bba")) == Rational(2));
  }
  SUBCASE("bad patterns") {
    CHECK_THROWS_AS(from_regex_union({""}, ab), BadRegex);
    CHECK_THROWS_AS(from_regex_union({"(a"}, ab), BadRegex);
    CHECK_THROWS_AS(from_regex_union({"c"}, ab), BadRegex);
    CHECK_THROWS_AS(from_regex_union({"*a"}, ab), BadRegex);
  }
}

TEST_CASE("guards") {
  const Propositions p{"a", "b"};
  CHECK(to_dnf(parse_guard("a", p), p) == "(a∧¬b)∨(a∧b)");
  CHECK(parse_guard("a & !b", p) == parse_guard("a ∧ ¬b", p));
  CHECK(parse_guard("a || b", p) == ~parse_guard("!a && !b", p));
  CHECK(parse_guard("true", p) == Guard::all(2));
  CHECK(parse_guard("⊥", p).empty());
  CHECK(to_dnf(Guard(2), p) == "⊥");
  CHECK(to_dnf(Guard::all(0), {}) == "⊤");
  CHECK_THROWS_AS(parse_guard("a &", p), BadGuard);
  CHECK_THROWS_AS(parse_guard("c", p), BadGuard);
  CHECK_THROWS_AS(parse_guard("(a", p), BadGuard);
  CHECK(parse_proposition_set("{b,a}", p) == 3);
  CHECK_THROWS_AS(parse_proposition_set("{c}", p), BadGuard);
}

TEST_CASE("summarize transitions") {
  const Propositions p{"a", "b"};
  const Alphabet in = proposition_alphabet(p);
  const auto out = make_output_alphabet({Rational(0), Rational(1)});
  std::vector<std::optional<MealyMachine::Edge>> edges(2 * 4);
  edges[1] = MealyMachine::Edge{1, Rational(0)};  // {a}
  edges[3] = MealyMachine::Edge{1, Rational(0)};  // {a,b}
  edges[2] = MealyMachine::Edge{0, Rational(1)};  // {b}
  const MealyMachine m(in, out, 0, edges, {false, true});
  const auto summary = summarize_transitions(m, p);
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].label == "(a∧¬b)∨(a∧b)");
  CHECK(summary[0].to == 1);
  CHECK(summary[1].label == "(¬a∧b)");
  CHECK(expand(to_guarded(m, p)) == m);

  SUBCASE("round trip on random complete machines") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const auto moore = random_moore(4, 4, 2, rng);
      const MooreMachine relabelled(in, moore.output_alphabet(), moore.initial(), moore.delta_table(), moore.labels());
      const auto mealy = moore_to_mealy(relabelled);
      CHECK(expand(to_guarded(mealy, p)) == mealy);
    }
  }
}

TEST_CASE("nondeterminism repair matches the template equations") {
  const auto gm = std::get<GuardedMachine>(load_machine(testing::fixture("repair_template.json")));
  CHECK_FALSE(gm.is_deterministic());
  CHECK_THROWS_AS(expand(gm), UnsupportedPattern);
  const auto fixed = repair_nondeterminism(gm);
  CHECK(fixed.is_deterministic());
  REQUIRE(fixed.num_states() == 5);
  CHECK(fixed.state_names[4] == "q5");
  const auto m = expand(fixed);

  CHECK(testing::repair_template_mismatches(m, 3) == 0);
  // {a}{b} and {a,b}{a} both reach q4.
  CHECK(m.trace(Sequence{1, 2}).back() == Rational(1));
  CHECK(m.trace(Sequence{3, 1}).back() == Rational(1));

  SUBCASE("deterministic input is returned unchanged") {
    CHECK(repair_nondeterminism(fixed).edges.size() == fixed.edges.size());
  }
  SUBCASE("other overlaps are rejected") {
    auto bad = gm;
    bad.edges[2].output = Rational(1);
    CHECK_THROWS_AS(repair_nondeterminism(bad), UnsupportedPattern);
  }
}

TEST_CASE("machine files") {
  const auto m = testing::astarb();
  const std::string text = dump_machine(m);
  CHECK(text.rfind("{\n  \"kind\": \"moore\",\n  \"input_alphabet\"", 0) == 0);
  const auto again = std::get<MooreMachine>(parse_machine(text));
  CHECK(same_structure(m, again));
  CHECK(dump_machine(again) == text);

  const auto rm = std::get<MealyMachine>(load_machine(testing::fixture("rm_astarb.json")));
  CHECK(std::get<MealyMachine>(parse_machine(dump_machine(rm))) == rm);

  const auto gm = std::get<GuardedMachine>(load_machine(testing::fixture("repair_template.json")));
  const auto gm2 = std::get<GuardedMachine>(parse_machine(dump_machine(gm)));
  CHECK(gm2.edges.size() == gm.edges.size());

  CHECK_THROWS_AS(parse_machine(R"({"kind":"moore","extra":1})"), BadMachineFile);
  CHECK_THROWS_AS(parse_machine("not json"), BadMachineFile);
  CHECK_THROWS_AS(parse_machine(R"({"kind":"petri"})"), BadMachineFile);
  auto j = nlohmann::json::parse(text);
  j["delta"]["start"].erase("a");
  CHECK_THROWS_AS(parse_machine(j.dump()), BadMachineFile);
  j = nlohmann::json::parse(text);
  j["labels"]["start"] = "1/3";
  CHECK_THROWS_AS(parse_machine(j.dump()), BadMachineFile);  // not in the output alphabet
  j["output_alphabet"] = {"0", "1/3", "1"};
  CHECK(std::get<MooreMachine>(parse_machine(j.dump())).label(0) == Rational(1, 3));
}

TEST_CASE("representative fixtures load and complete") {
  for (const char* name : {"office_coffee.json", "office_coffee_mail.json", "craft_make_plank.json", "craft_bridge.json"}) {
    auto gm = std::get<GuardedMachine>(load_machine(testing::fixture(name)));
    if (!gm.is_deterministic()) gm = repair_nondeterminism(gm);
    const auto truth = reward_machine_to_moore(expand(gm), Rational(0));
    CHECK(minimize(truth).num_states() >= 3);
    CHECK(minimize(truth).num_states() <= 10);
  }
}
