#include <algorithm>

#include "doctest.h"
#include "kac/error.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace kac;
using namespace kac::test;

namespace {

bool separates(const MealyMachine& m, StateId q, StateId r, const Word& word) {
  auto a = run(m, q, word);
  auto b = run(m, r, word);
  return a && b && a->outputs != b->outputs;
}

bool contains(const std::vector<Word>& ws, const Word& x) {
  return std::find(ws.begin(), ws.end(), x) != ws.end();
}

}  // namespace

TEST_CASE("b b b identifies every state of the counter spec") {
  auto m = fixture_machine("fig4-spec.fsm");
  auto bbb = w(m, "b b b");
  for (StateId q = 0; q < 3; ++q)
    for (StateId r = q + 1; r < 3; ++r) CHECK(separates(m, q, r, bbb));
  SeparatingFamily fam;
  fam.identifiers.assign(3, {bbb});
  CHECK(is_state_identifier_family(m, fam));
  CHECK_FALSE(harmonization_defect(m, fam));
}

TEST_CASE("the computed family for the counter spec identifies every state") {
  auto m = fixture_machine("fig4-spec.fsm");
  for (bool h : {true, false}) {
    auto fam = separating_family(m, h);
    CHECK(is_state_identifier_family(m, fam));
  }
}

TEST_CASE("one-state machines need no identifiers") {
  auto fam = separating_family(fixture_machine("fig6-spec.fsm"), true);
  REQUIRE(fam.identifiers.size() == 1);
  CHECK(fam.of(0).empty());
  CHECK(fam.flatten().empty());
}

TEST_CASE("the turnstile family shares p") {
  auto t = fixture_machine("turnstile.fsm");
  auto fam = separating_family(t, true);
  auto p = w(t, "p");
  CHECK(contains(fam.of(state(t, "L")), p));
  CHECK(contains(fam.of(state(t, "U")), p));
}

TEST_CASE("harmonized families separate every pair through a shared word") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 80; ++n) {
    auto m = ref::random_minimal_machine(rng, 2 + n % 5, 1 + n % 3, 2);
    auto fam = separating_family(m, true);
    CHECK_FALSE(harmonization_defect(m, fam));
    for (StateId q = 0; q < m.num_states(); ++q) {
      CHECK(std::is_sorted(fam.of(q).begin(), fam.of(q).end()));
      for (StateId r = 0; r < m.num_states(); ++r) {
        if (q == r) continue;
        bool shared = false;
        for (const auto& x : fam.of(q)) shared |= contains(fam.of(r), x) && separates(m, q, r, x);
        CHECK(shared);
      }
    }
  }
}

TEST_CASE("non-harmonized families still identify every state") {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 80; ++n) {
    auto m = ref::random_minimal_machine(rng, 2 + n % 5, 1 + n % 3, 2);
    auto loose = separating_family(m, false);
    auto tight = separating_family(m, true);
    CHECK(is_state_identifier_family(m, loose));
    for (StateId q = 0; q < m.num_states(); ++q) {
      CHECK(loose.of(q).size() <= tight.of(q).size());
      for (StateId r = 0; r < m.num_states(); ++r) {
        if (q == r) continue;
        bool found = false;
        for (const auto& x : loose.of(q)) found |= separates(m, q, r, x);
        CHECK(found);
      }
    }
  }
}

TEST_CASE("separating families require complete minimal machines") {
  MealyMachine partial(Alphabet({"a"}), Alphabet({"0"}));
  partial.add_state("s");
  CHECK_THROWS_AS(separating_family(partial, true), Error);
  MealyMachine twins(Alphabet({"a"}), Alphabet({"0"}));
  twins.add_state("x");
  twins.add_state("y");
  twins.define(0, 0, 1, 0);
  twins.define(1, 0, 0, 0);
  try {
    separating_family(twins, true);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMinimal);
  }
}
