#include "remap/constraints.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "remap/errors.hpp"
#include "remap/table.hpp"

namespace remap {

VarId ConstraintStore::fresh_var() {
  const auto index = static_cast<std::uint32_t>(parent_.size());
  parent_.push_back(index);
  return VarId{index};
}

void ConstraintStore::record_preference(VarId v1, VarId v2, int p) {
  if (v1.index >= parent_.size() || v2.index >= parent_.size())
    throw std::invalid_argument("unknown variable in preference");
  switch (p) {
    case 0:
      if (v1 != v2) equalities_.emplace_back(v1, v2);
      break;
    case -1:
      inequalities_.emplace(v1, v2);
      break;
    case 1:
      inequalities_.emplace(v2, v1);
      break;
    default:
      throw std::invalid_argument("preference must be -1, 0 or +1");
  }
}

VarId ConstraintStore::find(VarId v) const {
  if (v.index >= parent_.size()) throw std::invalid_argument("unknown variable " + v.str());
  std::uint32_t root = v.index;
  while (parent_[root] != root) root = parent_[root];
  for (std::uint32_t i = v.index; parent_[i] != root;) {
    const std::uint32_t next = parent_[i];
    parent_[i] = root;
    i = next;
  }
  return VarId{root};
}

void ConstraintStore::bind_value(VarId v, const Rational& value) {
  const VarId r = find(v);
  auto [it, fresh] = values_.try_emplace(r, value);
  if (!fresh && it->second != value)
    throw ValueConflict("class of " + v.str() + " is bound to " + it->second.str() + ", not " + value.str());
}

void ConstraintStore::merge(VarId a, VarId b) {
  VarId ra = find(a);
  VarId rb = find(b);
  if (ra == rb) return;
  if (rb < ra) std::swap(ra, rb);  // ra survives as representative
  auto loser = values_.find(rb);
  if (loser != values_.end()) {
    auto winner = values_.find(ra);
    if (winner == values_.end()) {
      values_.emplace(ra, loser->second);
    } else if (winner->second != loser->second) {
      throw ValueConflict("merging " + ra.str() + " (" + winner->second.str() + ") with " + rb.str() + " (" +
                          loser->second.str() + ")");
    }
    values_.erase(loser);
  }
  parent_[rb.index] = ra.index;
}

void ConstraintStore::unify(SymbolicTable* table) {
  while (!equalities_.empty()) {
    auto [a, b] = equalities_.front();
    equalities_.pop_front();
    merge(a, b);
  }

  std::set<std::pair<VarId, VarId>> rewritten;
  for (auto [lo, hi] : inequalities_) {
    const VarId rl = find(lo);
    const VarId rh = find(hi);
    if (rl == rh) throw CyclicOrder(rl.str() + " < " + rh.str() + " after unification");
    rewritten.emplace(rl, rh);
  }
  inequalities_ = std::move(rewritten);

  // The strict order must stay acyclic (Kahn's algorithm over the reps it mentions).
  std::map<VarId, std::size_t> indegree;
  std::map<VarId, std::vector<VarId>> succ;
  for (auto [lo, hi] : inequalities_) {
    indegree.try_emplace(lo, 0);
    ++indegree[hi];
    succ[lo].push_back(hi);
  }
  std::vector<VarId> ready;
  for (auto [v, d] : indegree)
    if (d == 0) ready.push_back(v);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const VarId v = ready.back();
    ready.pop_back();
    ++visited;
    for (VarId w : succ[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  if (visited != indegree.size()) throw CyclicOrder("strict order over representatives has a cycle");

  if (table) table->substitute(*this);
}

std::vector<VarId> ConstraintStore::representatives() const {
  std::vector<VarId> out;
  for (std::uint32_t i = 0; i < parent_.size(); ++i)
    if (find(VarId{i}).index == i) out.push_back(VarId{i});
  return out;
}

std::optional<Rational> ConstraintStore::value_of(VarId v) const {
  auto it = values_.find(find(v));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string ConstraintStore::dump() const {
  std::ostringstream out;
  for (auto [a, b] : equalities_) out << a.str() << " = " << b.str() << "\n";
  for (auto [lo, hi] : inequalities_) out << lo.str() << " < " << hi.str() << "\n";
  for (const auto& [v, val] : values_) out << v.str() << " := " << val.str() << "\n";
  return out.str();
}

}  // namespace remap
