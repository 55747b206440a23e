#include "kac/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kac/error.hpp"

namespace kac {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::NotInitiallyConnected: return "NotInitiallyConnected";
    case ErrorKind::NotComplete: return "NotCompleteSpec";
    case ErrorKind::NotMinimal: return "NotMinimalSpec";
    case ErrorKind::EmptySourceSet: return "EmptySourceSet";
    case ErrorKind::TestUndefinedOnSpec: return "TestUndefinedOnSpec";
    case ErrorKind::PrefixUndefined: return "PrefixUndefined";
    case ErrorKind::NotHarmonized: return "NotHarmonized";
    case ErrorKind::CoverNotMinimal: return "CoverNotMinimal";
    case ErrorKind::CoverWordMissing: return "CoverWordMissing";
    case ErrorKind::CoverWordUndefined: return "CoverWordUndefined";
    case ErrorKind::NotAncestorClosed: return "NotAncestorClosed";
    case ErrorKind::NotPairwiseApart: return "NotPairwiseApart";
    case ErrorKind::NotApart: return "NotApart";
    case ErrorKind::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::InitialSuiteRejected: return "InitialSuiteRejected";
  }
  return "Unknown";
}

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) add(n);
}

Alphabet Alphabet::sorted(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return Alphabet(std::move(names));
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::add(const std::string& name) {
  if (name.empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol name");
  auto [it, inserted] = index_.emplace(name, static_cast<Symbol>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word append(const Word& a, Symbol s) {
  Word out = a;
  out.push_back(s);
  return out;
}

bool is_prefix(const Word& prefix, const Word& word) {
  return prefix.size() <= word.size() &&
         std::equal(prefix.begin(), prefix.end(), word.begin());
}

std::string format_word(const Word& word, const Alphabet& alphabet) {
  if (word.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  Word word;
  std::string token;
  while (in >> token) {
    if (token == "ε") continue;
    auto s = alphabet.find(token);
    if (!s) throw Error(ErrorKind::Parse, "unknown input symbol '" + token + "'");
    word.push_back(*s);
  }
  return word;
}

std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t length) {
  std::vector<Word> out{Word{}};
  for (std::size_t l = 0; l < length; ++l) {
    std::vector<Word> next;
    next.reserve(out.size() * alphabet_size);
    for (const auto& w : out)
      for (Symbol s = 0; s < alphabet_size; ++s) next.push_back(append(w, s));
    out = std::move(next);
  }
  return out;
}

std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t bound) {
  std::vector<Word> out;
  for (std::size_t l = 0; l <= bound; ++l) {
    auto layer = words_of_length(alphabet_size, l);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Word> prefix_closure(std::span<const Word> words) {
  std::set<Word> closed{Word{}};
  for (const auto& w : words)
    for (std::size_t l = 1; l <= w.size(); ++l) closed.emplace(w.begin(), w.begin() + l);
  return {closed.begin(), closed.end()};
}

}  // namespace kac
