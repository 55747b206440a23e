#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kac/mealy.hpp"
#include "kac/test_suite.hpp"

namespace kac {

/// Text format:
///
///   mealy
///   inputs: a b
///   outputs: 0 1
///   states: s0 s1 s2        (optional; fixes state order)
///   initial: s0
///   s0 -a/0-> s1
///
/// `#` starts a comment line. Inputs are ordered lexicographically, states
/// by first mention. Parse errors carry the line number.
MealyMachine parse_machine(std::string_view text);
std::string serialize_machine(const MealyMachine& m);
std::string to_dot(const MealyMachine& m);

/// One test per line, tokens separated by spaces. Serialization writes the
/// maximal tests only, in lexicographic order.
TestSuite parse_suite(std::string_view text, const Alphabet& inputs);
std::string serialize_suite(const TestSuite& suite, const Alphabet& inputs);

/// One word per line; `ε` denotes the empty word. Used for cover files.
std::vector<Word> parse_word_list(std::string_view text, const Alphabet& inputs);
std::string serialize_word_list(const std::vector<Word>& words, const Alphabet& inputs);

/// `state: word ; word ; ...` per line. States without a line get an empty
/// identifier set.
SeparatingFamily parse_identifiers(std::string_view text, const MealyMachine& m);
std::string serialize_identifiers(const SeparatingFamily& family, const MealyMachine& m);

/// Reads a whole file; throws Error(Parse) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace kac
