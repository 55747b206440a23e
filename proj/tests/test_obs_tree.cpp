#include "doctest.h"
#include "kac/error.hpp"
#include "kac/obs_tree.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace kac;
using namespace kac::test;

TEST_CASE("the turnstile suite gives a 17-node tree numbered in preorder") {
  auto spec = fixture_machine("turnstile.fsm");
  auto tree = build_testing_tree(spec, fixture_suite("spyh-suite.txt", spec.inputs()));
  CHECK(tree.size() == 17);
  const std::vector<std::string> preorder = {
      "ε",     "c",   "c c",   "c c c",   "c c c p",   "c c p", "c c p p", "c p", "c p p",
      "c p p p", "p", "p c", "p c p", "p c p c", "p c p c p", "p p", "p p p"};
  for (NodeId q = 0; q < tree.size(); ++q) CHECK(format_word(tree.access(q), spec.inputs()) == preorder[q]);
  CHECK(*tree.spec_state(0) == state(spec, "L"));
  CHECK(*tree.spec_state(1) == state(spec, "U"));
  CHECK(tree.output(tree.find(w(spec, "c p")).value()) == *spec.outputs().find("F"));
  CHECK(tree.depth(14) == 5);
  CHECK(tree.parent(14) == 13);
}

TEST_CASE("the empty suite gives a single root") {
  auto spec = fixture_machine("fig1-spec.fsm");
  auto tree = build_testing_tree(spec, TestSuite{});
  CHECK(tree.size() == 1);
  CHECK(tree.children(0).empty());
}

TEST_CASE("the first spec's suite gives 15 nodes") {
  auto spec = fixture_machine("fig1-spec.fsm");
  auto tree = build_testing_tree(spec, fixture_suite("fig5-suite.txt", spec.inputs()));
  CHECK(tree.size() == 15);
  CHECK(tree.access(8) == w(spec, "b"));
  CHECK(tree.access(1) == w(spec, "a"));
}

TEST_CASE("functional simulation examples") {
  auto spec = fixture_machine("turnstile.fsm");
  auto tree = build_testing_tree(spec, fixture_suite("spyh-suite.txt", spec.inputs()));
  CHECK(check_functional_simulation(tree, spec));
  CHECK(check_functional_simulation(tree, fixture_machine("fig3-impl.fsm")));
  auto flipped = spec;
  auto t = *flipped.transition(state(spec, "L"), *spec.inputs().find("c"));
  flipped.redefine(state(spec, "L"), *spec.inputs().find("c"), t.target, *spec.outputs().find("F"));
  CHECK_FALSE(check_functional_simulation(tree, flipped));
}

TEST_CASE("simulation compares outputs by name") {
  auto spec = fixture_machine("turnstile.fsm");
  auto tree = build_testing_tree(spec, fixture_suite("spyh-suite.txt", spec.inputs()));
  auto text = serialize_machine(spec);
  auto pos = text.find("outputs: F L N");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 14, "outputs: N L F");
  auto reordered = parse_machine(text);
  CHECK(check_functional_simulation(tree, reordered));
}

TEST_CASE("tree construction errors") {
  MealyMachine partial(Alphabet({"a"}), Alphabet({"0"}));
  partial.add_state("s");
  try {
    build_testing_tree(partial, TestSuite(std::vector<Word>{Word{0}}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TestUndefinedOnSpec);
  }
  auto spec = fixture_machine("fig1-spec.fsm");
  try {
    build_testing_tree(spec, fixture_suite("fig5-suite.txt", spec.inputs()), 10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NodeBudgetExceeded);
  }
  ObservationTree tree(Alphabet({"a"}), Alphabet({"0", "1"}));
  tree.add_child(0, 0, 0);
  CHECK(tree.add_child(0, 0, 0) == 1);
  CHECK_THROWS_AS(tree.add_child(0, 0, 1), Error);
}

TEST_CASE("child lists stay sorted whatever the insertion order") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 50; ++n) {
    auto tree = ref::random_tree(rng, 200, 4, 3);
    for (NodeId q = 0; q < tree.size(); ++q) {
      auto cs = tree.children(q);
      for (std::size_t j = 1; j < cs.size(); ++j) CHECK(tree.input(cs[j - 1]) < tree.input(cs[j]));
      for (auto c : cs) {
        CHECK(tree.parent(c) == q);
        CHECK(tree.child(q, tree.input(c)) == c);
        CHECK(*tree.find(tree.access(c)) == c);
      }
    }
  }
}
