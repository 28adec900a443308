#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "remap/machine.hpp"

namespace remap::testing {

// Every word of length lo..hi over k symbols, shortlex order.
inline void for_all_words(std::size_t k, std::size_t lo, std::size_t hi,
                          const std::function<void(const Sequence&)>& fn) {
  std::vector<Sequence> level{Sequence{}};
  for (std::size_t len = 0; len <= hi; ++len) {
    if (len >= lo)
      for (const auto& w : level) fn(w);
    if (len == hi) break;
    std::vector<Sequence> next;
    next.reserve(level.size() * k);
    for (const auto& w : level)
      for (Symbol a = 0; a < k; ++a) next.push_back(concat(w, a));
    level = std::move(next);
  }
}

// Counts words of length ≤ `depth` on which the repaired machine `m` (states
// q1..q5 at indices 0..4, symbols = masks with bit0 = a, bit1 = b) leaves the
// transition structure the repair template prescribes:
//   q1 = δ(q1, ¬a∧¬b), q2 = δ(q1, a∧¬b), q3 = δ(q1, b∧¬a), q5 = δ(q1, a∧b),
//   q2 = δ(q2, ¬b), q4 = δ(q2, b), q3 = δ(q3, ¬a), q4 = δ(q3, a),
//   q5 = δ(q5, ¬(a∨b)), q4 = δ(q5, a∨b), q4 terminal.
inline std::size_t repair_template_mismatches(const MealyMachine& m, std::size_t depth) {
  enum { Q1, Q2, Q3, Q4, Q5, NONE };
  auto step = [](int q, std::uint32_t x) -> int {
    const bool a = x & 1, b = x & 2;
    switch (q) {
      case Q1: return (!a && !b) ? Q1 : (a && !b) ? Q2 : (b && !a) ? Q3 : Q5;
      case Q2: return b ? Q4 : Q2;
      case Q3: return a ? Q4 : Q3;
      case Q5: return (a || b) ? Q4 : Q5;
      default: return NONE;
    }
  };
  std::size_t bad = 0;
  for_all_words(4, 0, depth, [&](const Sequence& s) {
    int want = Q1;
    for (Symbol x : s) want = want == NONE ? NONE : step(want, x);
    std::optional<State> got = m.initial();
    for (Symbol x : s) {
      if (!got) break;
      const auto& e = m.edge(*got, x);
      got = e ? std::optional<State>(e->target) : std::nullopt;
    }
    if ((got ? static_cast<int>(*got) : NONE) != want) ++bad;
  });
  return bad;
}

}  // namespace remap::testing
