#include "remap/solver.hpp"

#include <algorithm>
#include <queue>

#include "remap/errors.hpp"

namespace remap {

Solution solve(const ConstraintStore& store, const std::vector<VarId>& reps, const OutputAlphabet& domain) {
  const std::size_t n = reps.size();
  std::map<VarId, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) slot.emplace(reps[i], i);

  auto slot_of = [&](VarId v) {
    auto it = slot.find(v);
    if (it == slot.end()) throw NotUnified(v.str() + " is not among the representatives being solved");
    return it->second;
  };

  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  for (const auto& [lo, hi] : store.inequalities()) {
    const std::size_t a = slot_of(lo);
    const std::size_t b = slot_of(hi);
    if (a == b) throw CyclicOrder(lo.str() + " < " + hi.str() + " within one class");
    succ[a].push_back(b);
    pred[b].push_back(a);
  }

  // Fixed domain indices from value bindings.
  std::vector<std::optional<std::size_t>> fixed(n);
  for (const auto& [v, value] : store.values()) {
    auto it = slot.find(store.find(v));
    if (it == slot.end()) continue;
    auto idx = output_index(domain, value);
    if (!idx) throw Unsatisfiable(v.str() + " is bound to " + value.str() + ", outside the output alphabet");
    fixed[it->second] = *idx;
  }

  // Kahn order, ties broken by creation index (reps are sorted by slot order).
  std::vector<std::size_t> indeg(n);
  for (std::size_t i = 0; i < n; ++i) indeg[i] = pred[i].size();
  std::priority_queue<std::pair<VarId, std::size_t>, std::vector<std::pair<VarId, std::size_t>>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.emplace(reps[i], i);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t i = ready.top().second;
    ready.pop();
    order.push_back(i);
    for (std::size_t j : succ[i])
      if (--indeg[j] == 0) ready.emplace(reps[j], j);
  }
  if (order.size() != n) throw CyclicOrder("strict order over representatives has a cycle");

  const long m = static_cast<long>(domain.size());
  if (n > 0 && m == 0) throw Unsatisfiable("empty output alphabet");

  // Least feasible index: pushed up by chains of predecessors and bindings.
  std::vector<long> lb(n, 0), ub(n, m - 1);
  for (std::size_t i : order) {
    long need = 0;
    for (std::size_t p : pred[i]) need = std::max(need, lb[p] + 1);
    if (fixed[i]) {
      if (static_cast<long>(*fixed[i]) < need)
        throw Unsatisfiable(reps[i].str() + " is bound below a forced lower bound");
      lb[i] = static_cast<long>(*fixed[i]);
    } else {
      lb[i] = need;
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = *it;
    long cap = m - 1;
    for (std::size_t s : succ[i]) cap = std::min(cap, ub[s] - 1);
    if (fixed[i]) {
      if (static_cast<long>(*fixed[i]) > cap)
        throw Unsatisfiable(reps[i].str() + " is bound above a forced upper bound");
      ub[i] = static_cast<long>(*fixed[i]);
    } else {
      ub[i] = cap;
    }
    if (lb[i] > ub[i]) throw Unsatisfiable("no value left for " + reps[i].str());
  }

  // Each variable at its least bound is itself a solution: lb is monotone along
  // every edge and equals the binding on bound variables, and it is pointwise
  // least, hence lexicographically least in any order.
  Solution sol;
  for (std::size_t i = 0; i < n; ++i) sol.assignment.emplace(reps[i], domain[static_cast<std::size_t>(lb[i])]);
  return sol;
}

}  // namespace remap
