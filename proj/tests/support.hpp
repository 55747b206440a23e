#pragma once

#include <random>
#include <string>
#include <vector>

#include "kac/fixtures.hpp"
#include "kac/io.hpp"
#include "kac/mealy.hpp"

namespace kac::test {

inline Word w(const MealyMachine& m, const std::string& text) { return parse_word(text, m.inputs()); }
inline Word w(const Alphabet& in, const std::string& text) { return parse_word(text, in); }

inline std::vector<Word> words(const Alphabet& in, const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(parse_word(t, in));
  return out;
}

inline StateId state(const MealyMachine& m, const std::string& name) { return *m.find_state(name); }

inline std::string outputs(const MealyMachine& m, const std::string& input) {
  auto r = run(m, m.initial(), w(m, input));
  if (!r) return "-";
  std::string s;
  for (auto o : r->outputs) s += (s.empty() ? "" : " ") + m.outputs().name(o);
  return s;
}

}  // namespace kac::test
