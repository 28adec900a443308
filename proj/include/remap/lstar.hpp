#pragma once

#include <functional>
#include <optional>

#include "remap/machine.hpp"
#include "remap/teacher.hpp"

namespace remap {

using MembershipOracle = std::function<Rational(const Sequence&)>;
using EquivalenceOracle = std::function<std::optional<Counterexample>(const MooreMachine&)>;

struct LStarResult {
  MooreMachine machine;
  std::size_t membership_queries = 0;  // distinct words asked
  std::size_t eq_queries = 0;
};

// Angluin's L* over Moore outputs: a concrete-valued observation table filled
// by membership queries, with counterexamples added to S with their prefixes.
LStarResult lstar_baseline(const Alphabet& input, const OutputAlphabet& output, const MembershipOracle& member,
                           const EquivalenceOracle& equivalent);

// Both oracles answered from a ground-truth machine, with the exact
// equivalence check.
LStarResult lstar_baseline(const MooreMachine& truth);

}  // namespace remap
