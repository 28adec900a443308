#include <functional>

#include "doctest.h"
#include "remap/errors.hpp"
#include "remap/solver.hpp"
#include "solver_oracle.hpp"

using namespace remap;

namespace {

OutputAlphabet dom(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> v;
  for (auto x : xs) v.emplace_back(x);
  return make_output_alphabet(v);
}

}  // namespace

TEST_CASE("worked examples") {
  SUBCASE("two ordered reps") {
    ConstraintStore st;
    const VarId v0 = st.fresh_var(), v1 = st.fresh_var(), v2 = st.fresh_var();
    st.record_preference(v0, v1, 0);
    st.record_preference(v0, v2, -1);
    st.unify();
    const auto sol = solve(st, st.representatives(), dom({0, 1}));
    CHECK(sol.at(v0) == Rational(0));
    CHECK(sol.at(v2) == Rational(1));
  }
  SUBCASE("single rep takes the least value") {
    ConstraintStore st;
    const VarId v = st.fresh_var();
    CHECK(solve(st, {v}, dom({0, 1})).at(v) == Rational(0));
  }
  SUBCASE("pigeonhole") {
    ConstraintStore st;
    const VarId a = st.fresh_var(), b = st.fresh_var(), c = st.fresh_var();
    st.record_preference(a, b, -1);
    st.record_preference(b, c, -1);
    CHECK_THROWS_AS(solve(st, {a, b, c}, dom({0, 1})), Unsatisfiable);
  }
  SUBCASE("binding in the middle") {
    ConstraintStore st;
    const VarId a = st.fresh_var(), b = st.fresh_var(), c = st.fresh_var();
    st.record_preference(a, b, -1);
    st.record_preference(b, c, -1);
    st.bind_value(b, Rational(5));
    const auto sol = solve(st, {a, b, c}, dom({0, 5, 7}));
    CHECK(sol.at(a) == Rational(0));
    CHECK(sol.at(b) == Rational(5));
    CHECK(sol.at(c) == Rational(7));
  }
  SUBCASE("binding outside the domain") {
    ConstraintStore st;
    const VarId a = st.fresh_var();
    st.bind_value(a, Rational(3));
    CHECK_THROWS_AS(solve(st, {a}, dom({0, 1})), Unsatisfiable);
  }
  SUBCASE("cycle") {
    ConstraintStore st;
    const VarId a = st.fresh_var(), b = st.fresh_var();
    st.record_preference(a, b, -1);
    st.record_preference(b, a, -1);
    CHECK_THROWS_AS(solve(st, {a, b}, dom({0, 1, 2})), CyclicOrder);
  }
  SUBCASE("constraint outside the given reps") {
    ConstraintStore st;
    const VarId a = st.fresh_var(), b = st.fresh_var();
    st.record_preference(a, b, -1);
    CHECK_THROWS_AS(solve(st, {a}, dom({0, 1})), NotUnified);
  }
  SUBCASE("fully bound reps return the bindings") {
    ConstraintStore st;
    const VarId a = st.fresh_var(), b = st.fresh_var();
    st.record_preference(a, b, -1);
    st.bind_value(a, Rational(1));
    st.bind_value(b, Rational(2));
    const auto sol = solve(st, {a, b}, dom({0, 1, 2}));
    CHECK(sol.at(a) == Rational(1));
    CHECK(sol.at(b) == Rational(2));
  }
}

TEST_CASE("exhaustive agreement with brute force") {
  const auto stats = testing::solver_exhaustive_check(4, 4);
  CHECK(stats.instances > 10000);
  CHECK(stats.mismatches == 0);
  CHECK(stats.satisfiable > 0);
  CHECK(stats.unsatisfiable > 0);
}
