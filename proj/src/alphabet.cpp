#include "remap/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

#include "remap/errors.hpp"

namespace remap {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw std::invalid_argument("empty symbol label");
    if (!index_.emplace(labels_[i], static_cast<Symbol>(i)).second)
      throw std::invalid_argument("duplicate symbol label '" + labels_[i] + "'");
  }
}

const std::string& Alphabet::label(Symbol s) const {
  if (s >= labels_.size()) throw UnknownSymbol("symbol index " + std::to_string(s));
  return labels_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::symbol(std::string_view label) const {
  if (auto s = find(label)) return *s;
  throw UnknownSymbol("'" + std::string(label) + "' is not in the input alphabet");
}

Sequence Alphabet::parse(const std::vector<std::string>& labels) const {
  Sequence out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(symbol(l));
  return out;
}

std::vector<std::string> Alphabet::labels_of(const Sequence& seq) const {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (Symbol s : seq) out.push_back(label(s));
  return out;
}

std::string Alphabet::format(const Sequence& seq) const {
  if (seq.empty()) return "ε";
  const bool compact = std::all_of(labels_.begin(), labels_.end(),
                                   [](const std::string& l) { return l.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!compact && i) out += ' ';
    out += label(seq[i]);
  }
  return out;
}

Sequence Alphabet::parse_text(std::string_view text) const {
  if (text.empty() || text == "ε") return {};
  Sequence out;
  if (text.find(' ') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto next = text.find(' ', pos);
      const auto token = text.substr(pos, next == std::string_view::npos ? text.npos : next - pos);
      if (!token.empty()) out.push_back(symbol(token));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    return out;
  }
  for (char c : text) out.push_back(symbol(std::string_view(&c, 1)));
  return out;
}

OutputAlphabet make_output_alphabet(std::vector<Rational> values) {
  if (values.empty()) throw std::invalid_argument("empty output alphabet");
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::invalid_argument("duplicate output value");
  return values;
}

std::optional<std::size_t> output_index(const OutputAlphabet& out, const Rational& value) {
  auto it = std::lower_bound(out.begin(), out.end(), value);
  if (it == out.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - out.begin());
}

Sequence concat(const Sequence& a, const Sequence& b) {
  Sequence out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Sequence concat(const Sequence& a, Symbol s) {
  Sequence out = a;
  out.push_back(s);
  return out;
}

bool shortlex_less(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Sequence> prefixes(const Sequence& s) {
  std::vector<Sequence> out;
  out.reserve(s.size() + 1);
  for (std::size_t n = 0; n <= s.size(); ++n) out.emplace_back(s.begin(), s.begin() + n);
  return out;
}

std::vector<Sequence> suffixes(const Sequence& s) {
  std::vector<Sequence> out;
  out.reserve(s.size() + 1);
  for (std::size_t n = 0; n <= s.size(); ++n) out.emplace_back(s.end() - n, s.end());
  return out;
}

}  // namespace remap
