#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "remap/rational.hpp"

namespace remap {

// Index of an input symbol within its Alphabet.
using Symbol = std::uint32_t;
// A word over an input alphabet; the empty vector is epsilon.
using Sequence = std::vector<Symbol>;
// Finite, strictly increasing list of output values.
using OutputAlphabet = std::vector<Rational>;

// Ordered input alphabet. Symbol i has display label labels()[i].
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Symbol s) const;

  std::optional<Symbol> find(std::string_view label) const;
  // Throws UnknownSymbol.
  Symbol symbol(std::string_view label) const;

  Sequence parse(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(const Sequence& seq) const;
  // Human-readable form: "ε" for the empty word, labels concatenated when every
  // label is one character, otherwise space separated.
  std::string format(const Sequence& seq) const;
  // Inverse of format() for single-character alphabets; also accepts
  // space-separated labels and "ε"/"" for the empty word.
  Sequence parse_text(std::string_view text) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.labels_ == b.labels_; }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Symbol> index_;
};

// Validates and returns a strictly increasing output alphabet built from
// arbitrary-order values. Throws std::invalid_argument on duplicates or empty.
OutputAlphabet make_output_alphabet(std::vector<Rational> values);
std::optional<std::size_t> output_index(const OutputAlphabet& out, const Rational& value);

Sequence concat(const Sequence& a, const Sequence& b);
Sequence concat(const Sequence& a, Symbol s);
// Length first, then lexicographic by symbol index.
bool shortlex_less(const Sequence& a, const Sequence& b);
// All prefixes from epsilon up to and including `s`.
std::vector<Sequence> prefixes(const Sequence& s);
std::vector<Sequence> suffixes(const Sequence& s);

}  // namespace remap
