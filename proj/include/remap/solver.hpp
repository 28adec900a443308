#pragma once

#include <map>
#include <vector>

#include "remap/alphabet.hpp"
#include "remap/constraints.hpp"

namespace remap {

// Assignment of output values to class representatives.
struct Solution {
  std::map<VarId, Rational> assignment;
  const Rational& at(VarId v) const { return assignment.at(v); }
};

// Finds the assignment of `reps` into `domain` satisfying every strict
// inequality and value binding in `store`. Representatives are visited in
// topological order of the inequality graph (ties by creation index) and each
// unbound one takes the least value that still admits a completion, so the
// result is the lexicographically least solution in that order.
// Throws Unsatisfiable or CyclicOrder; NotUnified if a constraint mentions a
// variable outside `reps`.
Solution solve(const ConstraintStore& store, const std::vector<VarId>& reps, const OutputAlphabet& domain);

}  // namespace remap
