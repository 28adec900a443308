#include "remap/lstar.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "remap/errors.hpp"

namespace remap {

namespace {

class ConcreteTable {
public:
  ConcreteTable(std::size_t k, const MembershipOracle& member) : k_(k), member_(member) {
    prefixes_.emplace_back();
    suffixes_.emplace_back();
  }

  const Rational& value(const Sequence& w) {
    auto it = cache_.find(w);
    if (it == cache_.end()) it = cache_.emplace(w, member_(w)).first;
    return it->second;
  }

  std::vector<Rational> row(const Sequence& s) {
    std::vector<Rational> out;
    out.reserve(suffixes_.size());
    for (const auto& e : suffixes_) out.push_back(value(concat(s, e)));
    return out;
  }

  void add_prefix(const Sequence& s) {
    for (auto& p : prefixes(s))
      if (std::find(prefixes_.begin(), prefixes_.end(), p) == prefixes_.end()) prefixes_.push_back(std::move(p));
  }

  // Returns true if something was added.
  bool close_or_fix() {
    for (std::size_t i = 0; i < prefixes_.size(); ++i)
      for (std::size_t j = i + 1; j < prefixes_.size(); ++j) {
        if (row(prefixes_[i]) != row(prefixes_[j])) continue;
        for (Symbol a = 0; a < k_; ++a)
          for (std::size_t e = 0; e < suffixes_.size(); ++e) {
            const Sequence suffix = suffixes_[e];
            if (value(concat(concat(prefixes_[i], a), suffix)) != value(concat(concat(prefixes_[j], a), suffix))) {
              suffixes_.push_back(concat(Sequence{a}, suffix));
              return true;
            }
          }
      }
    std::set<std::vector<Rational>> rows;
    for (const auto& s : prefixes_) rows.insert(row(s));
    for (std::size_t i = 0; i < prefixes_.size(); ++i)
      for (Symbol a = 0; a < k_; ++a) {
        Sequence sa = concat(prefixes_[i], a);
        if (!rows.count(row(sa))) {
          prefixes_.push_back(std::move(sa));
          return true;
        }
      }
    return false;
  }

  MooreMachine hypothesis(const Alphabet& input, const OutputAlphabet& output) {
    std::map<std::vector<Rational>, State> index;
    std::vector<Sequence> access;
    for (const auto& s : prefixes_)
      if (index.try_emplace(row(s), static_cast<State>(access.size())).second) access.push_back(s);
    std::vector<State> delta(access.size() * k_);
    std::vector<Rational> labels;
    for (std::size_t q = 0; q < access.size(); ++q) {
      for (Symbol a = 0; a < k_; ++a) delta[q * k_ + a] = index.at(row(concat(access[q], a)));
      labels.push_back(value(access[q]));
    }
    return MooreMachine(input, output, index.at(row(Sequence{})), std::move(delta), std::move(labels));
  }

  std::size_t queries() const noexcept { return cache_.size(); }

private:
  std::size_t k_;
  const MembershipOracle& member_;
  std::vector<Sequence> prefixes_;
  std::vector<Sequence> suffixes_;
  std::map<Sequence, Rational> cache_;
};

}  // namespace

LStarResult lstar_baseline(const Alphabet& input, const OutputAlphabet& output, const MembershipOracle& member,
                           const EquivalenceOracle& equivalent) {
  ConcreteTable table(input.size(), member);
  std::size_t eq_queries = 0;
  for (;;) {
    while (table.close_or_fix()) {
    }
    MooreMachine h = table.hypothesis(input, output);
    ++eq_queries;
    auto cex = equivalent(h);
    if (!cex) return LStarResult{std::move(h), table.queries(), eq_queries};
    table.add_prefix(cex->sequence);
  }
}

LStarResult lstar_baseline(const MooreMachine& truth) {
  return lstar_baseline(
      truth.input_alphabet(), truth.output_alphabet(), [&](const Sequence& s) { return truth.run(s); },
      [&](const MooreMachine& h) { return equivalence_query_exact(truth, h); });
}

}  // namespace remap
