#pragma once

#include <string_view>
#include <vector>

#include "kac/mealy.hpp"
#include "kac/test_suite.hpp"

namespace kac {

/// Example machines, suites and covers shipped under fixtures/ and compiled
/// into the library. Names are file names, e.g. "turnstile.fsm".
std::vector<std::string_view> fixture_names();

/// Throws InvalidArgument for an unknown name.
std::string_view fixture_text(std::string_view name);

MealyMachine fixture_machine(std::string_view name);
TestSuite fixture_suite(std::string_view name, const Alphabet& inputs);
std::vector<Word> fixture_words(std::string_view name, const Alphabet& inputs);

}  // namespace kac
