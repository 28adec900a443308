#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "remap/alphabet.hpp"
#include "remap/constraints.hpp"

namespace remap {

// Symbolic observation table: prefixes S, suffixes E, and the context mapping
// each queried word s·e to a variable. Cells are addressed by (prefix, suffix)
// but a cell's variable is the context entry of the concatenation, so equal
// concatenations always share a variable.
class SymbolicTable {
public:
  explicit SymbolicTable(std::size_t alphabet_size);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  const std::vector<Sequence>& prefixes() const noexcept { return prefixes_; }
  const std::vector<Sequence>& suffixes() const noexcept { return suffixes_; }
  bool has_prefix(const Sequence& s) const { return prefix_set_.count(s) > 0; }
  bool has_suffix(const Sequence& e) const { return suffix_set_.count(e) > 0; }

  // Adds `s` and all of its prefixes (S stays prefix-closed). Returns true if
  // S grew.
  bool add_prefix(const Sequence& s);
  // Adds `e` and all of its suffixes (E stays suffix-closed).
  bool add_suffix(const Sequence& e);

  // Row indices in scan order: S in insertion order, then S·Σ words not in S.
  std::vector<Sequence> row_words() const;
  // Distinct words of (S ∪ S·Σ)·E in fill order.
  std::vector<Sequence> cell_words() const;

  std::optional<VarId> lookup(const Sequence& word) const;
  std::optional<VarId> cell(const Sequence& prefix, const Sequence& suffix) const;
  // Assigns a variable to a word that has none yet.
  void assign(const Sequence& word, VarId v);
  const std::map<Sequence, VarId>& context() const noexcept { return context_; }
  // Replaces every context variable by store.find(v).
  void substitute(const ConstraintStore& store);

  // Row of s ∈ S ∪ S·Σ in E order. Throws UnknownPrefix, or NotUnified if a
  // cell has not been filled.
  std::vector<VarId> row(const Sequence& s) const;

  // Every cell filled and holding a class representative.
  bool is_unified(const ConstraintStore& store) const;
  std::size_t distinct_rows() const;

private:
  std::size_t alphabet_size_;
  std::vector<Sequence> prefixes_;
  std::set<Sequence> prefix_set_;
  std::vector<Sequence> suffixes_;
  std::set<Sequence> suffix_set_;
  std::map<Sequence, VarId> context_;
};

struct ClosedCheck {
  bool closed = true;
  // First s·σ (S order, then alphabet order) whose row is missing from S.
  std::optional<Sequence> prefix;
  std::optional<Symbol> symbol;
};

struct ConsistencyCheck {
  struct Witness {
    Sequence s1;
    Sequence s2;
    Symbol symbol;
    Sequence suffix;
  };
  bool consistent = true;
  std::optional<Witness> witness;
};

// Both throw NotUnified unless table.is_unified(store).
ClosedCheck is_closed(const SymbolicTable& table, const ConstraintStore& store);
ConsistencyCheck is_consistent(const SymbolicTable& table, const ConstraintStore& store);

}  // namespace remap
