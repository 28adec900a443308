#include "remap/table.hpp"

#include <algorithm>

#include "remap/errors.hpp"

namespace remap {

SymbolicTable::SymbolicTable(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {
  prefixes_.emplace_back();
  prefix_set_.emplace();
  suffixes_.emplace_back();
  suffix_set_.emplace();
}

bool SymbolicTable::add_prefix(const Sequence& s) {
  bool grew = false;
  for (auto& p : remap::prefixes(s)) {
    if (prefix_set_.insert(p).second) {
      prefixes_.push_back(std::move(p));
      grew = true;
    }
  }
  return grew;
}

bool SymbolicTable::add_suffix(const Sequence& e) {
  bool grew = false;
  // Shortest first so E keeps a stable, suffix-closed insertion order.
  for (auto& x : remap::suffixes(e)) {
    if (suffix_set_.insert(x).second) {
      suffixes_.push_back(std::move(x));
      grew = true;
    }
  }
  return grew;
}

std::vector<Sequence> SymbolicTable::row_words() const {
  std::vector<Sequence> rows = prefixes_;
  for (const auto& s : prefixes_)
    for (Symbol a = 0; a < alphabet_size_; ++a) {
      Sequence sa = concat(s, a);
      if (!prefix_set_.count(sa)) rows.push_back(std::move(sa));
    }
  return rows;
}

std::vector<Sequence> SymbolicTable::cell_words() const {
  std::vector<Sequence> out;
  std::set<Sequence> seen;
  for (const auto& r : row_words())
    for (const auto& e : suffixes_) {
      Sequence w = concat(r, e);
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  return out;
}

std::optional<VarId> SymbolicTable::lookup(const Sequence& word) const {
  auto it = context_.find(word);
  if (it == context_.end()) return std::nullopt;
  return it->second;
}

std::optional<VarId> SymbolicTable::cell(const Sequence& prefix, const Sequence& suffix) const {
  return lookup(concat(prefix, suffix));
}

void SymbolicTable::assign(const Sequence& word, VarId v) {
  if (!context_.emplace(word, v).second) throw std::logic_error("word already has a variable");
}

void SymbolicTable::substitute(const ConstraintStore& store) {
  for (auto& [word, v] : context_) v = store.find(v);
}

std::vector<VarId> SymbolicTable::row(const Sequence& s) const {
  bool known = prefix_set_.count(s) > 0;
  if (!known && !s.empty()) {
    Sequence parent(s.begin(), s.end() - 1);
    known = prefix_set_.count(parent) > 0 && s.back() < alphabet_size_;
  }
  if (!known) throw UnknownPrefix("word is not in S ∪ S·Σ");
  std::vector<VarId> out;
  out.reserve(suffixes_.size());
  for (const auto& e : suffixes_) {
    auto v = cell(s, e);
    if (!v) throw NotUnified("cell has not been filled");
    out.push_back(*v);
  }
  return out;
}

bool SymbolicTable::is_unified(const ConstraintStore& store) const {
  if (store.pending_equalities() != 0) return false;
  for (const auto& w : cell_words()) {
    auto v = lookup(w);
    if (!v || !store.is_representative(*v)) return false;
  }
  return true;
}

std::size_t SymbolicTable::distinct_rows() const {
  std::set<std::vector<VarId>> rows;
  for (const auto& s : prefixes_) rows.insert(row(s));
  return rows.size();
}

ClosedCheck is_closed(const SymbolicTable& table, const ConstraintStore& store) {
  if (!table.is_unified(store)) throw NotUnified("closedness needs a unified table");
  std::set<std::vector<VarId>> rows;
  for (const auto& s : table.prefixes()) rows.insert(table.row(s));
  for (const auto& s : table.prefixes())
    for (Symbol a = 0; a < table.alphabet_size(); ++a) {
      Sequence sa = concat(s, a);
      if (!rows.count(table.row(sa))) return ClosedCheck{false, s, a};
    }
  return {};
}

ConsistencyCheck is_consistent(const SymbolicTable& table, const ConstraintStore& store) {
  if (!table.is_unified(store)) throw NotUnified("consistency needs a unified table");
  const auto& S = table.prefixes();
  const auto& E = table.suffixes();
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      if (table.row(S[i]) != table.row(S[j])) continue;
      for (Symbol a = 0; a < table.alphabet_size(); ++a) {
        const Sequence s1a = concat(S[i], a);
        const Sequence s2a = concat(S[j], a);
        for (const auto& e : E) {
          if (*table.cell(s1a, e) != *table.cell(s2a, e))
            return ConsistencyCheck{false, ConsistencyCheck::Witness{S[i], S[j], a, e}};
        }
      }
    }
  return {};
}

}  // namespace remap
