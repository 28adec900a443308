#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "remap/rational.hpp"

namespace remap {

class SymbolicTable;

// Table variable. Indices come from a per-session creation counter and are
// never reused.
struct VarId {
  std::uint32_t index = 0;
  friend auto operator<=>(const VarId&, const VarId&) = default;
  std::string str() const { return "v" + std::to_string(index); }
};

// Constraints gathered from preference and equivalence queries, plus the
// union-find over variables. A class's representative is its member with the
// lowest creation index.
class ConstraintStore {
public:
  VarId fresh_var();
  std::size_t num_vars() const noexcept { return parent_.size(); }

  // p = 0 enqueues v1 = v2; p = -1 records v1 < v2; p = +1 records v2 < v1.
  // An equality of a variable with itself is dropped.
  void record_preference(VarId v1, VarId v2, int p);

  // Attaches `value` to the class of v. Throws ValueConflict if the class is
  // already bound to a different value.
  void bind_value(VarId v, const Rational& value);

  // Drains the equality queue into the union-find, rewrites inequalities onto
  // representatives, and (when given) replaces every table/context variable
  // by its representative. Throws ValueConflict when two classes bound to
  // different values merge, CyclicOrder when the order becomes cyclic.
  void unify(SymbolicTable* table = nullptr);
  void unify(SymbolicTable& table) { unify(&table); }

  VarId find(VarId v) const;
  bool is_representative(VarId v) const { return find(v) == v; }
  // Sorted by creation index.
  std::vector<VarId> representatives() const;
  std::size_t num_known() const noexcept { return values_.size(); }
  std::optional<Rational> value_of(VarId v) const;

  // Normalized (lesser, greater) pairs.
  const std::set<std::pair<VarId, VarId>>& inequalities() const noexcept { return inequalities_; }
  const std::map<VarId, Rational>& values() const noexcept { return values_; }
  std::size_t pending_equalities() const noexcept { return equalities_.size(); }

  // One constraint per line: "v0 = v3" (pending equality), "v0 < v2",
  // "v2 := 1" (value binding).
  std::string dump() const;

private:
  void merge(VarId a, VarId b);

  mutable std::vector<std::uint32_t> parent_;  // path-compressed in find()
  std::deque<std::pair<VarId, VarId>> equalities_;
  std::set<std::pair<VarId, VarId>> inequalities_;
  std::map<VarId, Rational> values_;
};

}  // namespace remap
