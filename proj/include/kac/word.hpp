#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kac {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Ordered set of token names. Symbols are indices into it, so comparing
/// symbols compares positions in the alphabet.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// Builds an alphabet whose order is the lexicographic order of the names.
  static Alphabet sorted(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Symbol> find(std::string_view name) const;
  Symbol add(const std::string& name);

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

/// Concatenation helpers.
Word concat(const Word& a, const Word& b);
Word append(const Word& a, Symbol s);
bool is_prefix(const Word& prefix, const Word& word);

/// Renders a word as space separated tokens; the empty word becomes "ε".
std::string format_word(const Word& word, const Alphabet& alphabet);

/// Inverse of format_word. Accepts "ε" for the empty word.
/// Throws Error(Parse) on unknown tokens.
Word parse_word(std::string_view text, const Alphabet& alphabet);

/// Words over `alphabet_size` symbols of length exactly `length`, in
/// lexicographic order.
std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t length);

/// I^{<=bound}: every word up to `bound` symbols, length first, then
/// lexicographic.
std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t bound);

/// Pref(W): the prefix closure, including the empty word.
std::vector<Word> prefix_closure(std::span<const Word> words);

}  // namespace kac
