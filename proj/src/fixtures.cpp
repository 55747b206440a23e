#include "kac/fixtures.hpp"

#include <string>
#include <utility>

#include "kac/error.hpp"
#include "kac/io.hpp"

namespace kac {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kFixtureData[];
extern const std::size_t kFixtureCount;
}  // namespace detail

std::vector<std::string_view> fixture_names() {
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i) out.push_back(detail::kFixtureData[i].first);
  return out;
}

std::string_view fixture_text(std::string_view name) {
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i)
    if (detail::kFixtureData[i].first == name) return detail::kFixtureData[i].second;
  throw Error(ErrorKind::InvalidArgument, "no fixture named '" + std::string(name) + "'");
}

MealyMachine fixture_machine(std::string_view name) { return parse_machine(fixture_text(name)); }

TestSuite fixture_suite(std::string_view name, const Alphabet& inputs) {
  return parse_suite(fixture_text(name), inputs);
}

std::vector<Word> fixture_words(std::string_view name, const Alphabet& inputs) {
  return parse_word_list(fixture_text(name), inputs);
}

}  // namespace kac
