#include "doctest.h"
#include "json.hpp"
#include "kac/checker.hpp"
#include "kac/error.hpp"
#include "kac/generators.hpp"
#include "kac/report.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace kac;
using namespace kac::test;

namespace {

struct Fixture {
  MealyMachine spec;
  TestSuite suite;
  std::vector<Word> cover;
};

Fixture load(const char* spec, const char* suite, const char* cover) {
  auto m = fixture_machine(spec);
  auto in = m.inputs();
  return {std::move(m), fixture_suite(suite, in), fixture_words(cover, in)};
}

}  // namespace

TEST_CASE("the first spec's suite is accepted at k = 0, also with b b a") {
  auto f = load("fig1-spec.fsm", "fig5-suite.txt", "fig5-cover.txt");
  auto r = check_kA(f.spec, f.suite, f.cover, 0);
  CHECK(r.accepted());
  CHECK(r.basis_size == 3);
  CHECK(r.tree_nodes == 15);
  CHECK(r.reasons.empty());
  auto p = load("fig1-spec.fsm", "fig5-pruned-suite.txt", "fig5-cover.txt");
  CHECK(check_kA(p.spec, p.suite, p.cover, 0).accepted());
  CHECK(check_m(f.spec, f.suite, f.cover, 0).accepted());
}

TEST_CASE("the default cover is the canonical one") {
  auto f = load("fig1-spec.fsm", "fig5-suite.txt", "fig5-cover.txt");
  CHECK(minimal_state_cover(f.spec).words == f.cover);
}

TEST_CASE("the one-state suite is reported unknown, not incomplete") {
  auto f = load("fig6-spec.fsm", "fig6-suite.txt", "fig6-cover.txt");
  auto r = check_kA(f.spec, f.suite, f.cover, 0);
  CHECK_FALSE(r.accepted());
  CHECK_FALSE(r.basis_complete);
  REQUIRE_FALSE(r.reasons.empty());
  auto text = render_text(r);
  CHECK(text.find("verdict: UNKNOWN") != std::string::npos);
  CHECK(text.find("INCOMPLETE") == std::string::npos);
  auto doc = nlohmann::json::parse(render_structured(r));
  CHECK(doc["verdict"] == "unknown");
  CHECK(doc["accepted"] == false);
}

TEST_CASE("the three-state l/r suite fails condition (1) at k = 1") {
  auto f = load("appendixA-spec.fsm", "appendixA-suite.txt", "appendixA-cover.txt");
  auto r = check_kA(f.spec, f.suite, f.cover, 1);
  CHECK_FALSE(r.accepted());
  CHECK(r.basis_ok);
  CHECK(r.basis_complete);
  CHECK(r.frontier_complete == std::vector<bool>{true});
  CHECK(r.unidentified.empty());
  REQUIRE(r.condition1_violations.size() == 1);
  CHECK(r.condition1_violations[0].q.access == w(f.spec, "r r r l"));
  CHECK(r.condition1_violations[0].r.access == w(f.spec, "r r r"));

  auto a = analyze_suite(f.spec, f.suite, f.cover);
  auto t6 = *a.tree.find(w(f.spec, "r r r"));
  auto t13 = *a.tree.find(w(f.spec, "r r r l"));
  CHECK(a.strat.candidate_nodes(t6) == std::vector<NodeId>{0});
  CHECK(a.strat.candidate_nodes(t13) == std::vector<NodeId>{*a.tree.find(w(f.spec, "r r"))});
  CHECK_FALSE(a.matrix.apart(t6, t13));
  CHECK(a.tree.size() > 13);
}

TEST_CASE("the l/r suite with cover {ε, l, r} is not accepted either") {
  auto f = load("appendixA-spec.fsm", "appendixA-suite.txt", "appendixA-cover.txt");
  auto r = check_kA(f.spec, f.suite, words(f.spec.inputs(), {"ε", "l", "r"}), 1);
  CHECK_FALSE(r.accepted());
}

TEST_CASE("the H suite: m-complete, not shown 1-A-complete") {
  auto f = load("h-spec.fsm", "h-suite.txt", "h-cover.txt");
  auto m = check_m(f.spec, f.suite, f.cover, 1);
  CHECK(m.accepted());
  CHECK(m.condition3_violations.empty());
  auto ka = check_kA(f.spec, f.suite, f.cover, 1);
  CHECK_FALSE(ka.accepted());
  bool found = false;
  for (const auto& p : ka.condition1_violations)
    found |= p.q.access == w(f.spec, "c b") && p.r.access == w(f.spec, "a c");
  CHECK(found);
}

TEST_CASE("condition (1) is vacuous at k = 0") {
  auto f = load("fig1-spec.fsm", "fig5-suite.txt", "fig5-cover.txt");
  auto a = analyze_suite(f.spec, f.suite, f.cover);
  CHECK(check_condition1(a.strat, a.matrix, 0).empty());
  CHECK(check_condition2(a.strat, a.matrix, 0).empty());
}

TEST_CASE("strata completeness of the first spec's tree") {
  auto f = load("fig1-spec.fsm", "fig5-suite.txt", "fig5-cover.txt");
  auto a = analyze_suite(f.spec, f.suite, f.cover);
  auto c = strata_completeness(a.tree, a.strat, 3);
  CHECK(c.basis_complete());
  for (std::size_t j = 0; j < 3; ++j) CHECK_FALSE(c.frontier_complete(j));
  const auto b = *f.spec.inputs().find("b");
  for (const auto& miss : c.frontier[0]) CHECK(miss.inputs == std::vector<Symbol>{b});
}

TEST_CASE("strata completeness recounted from the node arena") {
  auto spec = fixture_machine("turnstile.fsm");
  auto suite = fixture_suite("spyh-suite.txt", spec.inputs());
  auto a = analyze_suite(spec, suite, words(spec.inputs(), {"ε", "c"}));
  auto c = strata_completeness(a.tree, a.strat, 1);
  std::size_t incomplete_b = 0, incomplete_f0 = 0;
  for (NodeId q = 0; q < a.tree.size(); ++q) {
    if (a.tree.is_complete(q)) continue;
    if (a.strat.level[q] == -1) ++incomplete_b;
    if (a.strat.level[q] == 0) ++incomplete_f0;
  }
  CHECK(c.basis.size() == incomplete_b);
  CHECK(c.frontier[0].size() == incomplete_f0);
}

TEST_CASE("cover-induced bases are checked") {
  auto spec = fixture_machine("fig1-spec.fsm");
  auto tree = build_testing_tree(spec, fixture_suite("fig5-suite.txt", spec.inputs()));
  auto m = compute_apartness(tree);
  auto kind = [&](std::vector<std::string> cover) {
    try {
      basis_from_cover(tree, words(spec.inputs(), cover), m);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  CHECK(kind({"ε", "b b b b"}) == ErrorKind::CoverWordMissing);
  CHECK(kind({"ε", "a a"}) == ErrorKind::NotAncestorClosed);
  CHECK(kind({"ε", "a", "a b a"}) == ErrorKind::NotAncestorClosed);
  auto root_only = basis_from_cover(tree, std::vector<Word>{{}}, m);
  CHECK(root_only.basis == std::vector<NodeId>{0});
  auto f0 = root_only.frontier(0);
  CHECK(std::vector<NodeId>(f0.begin(), f0.end()) == std::vector<NodeId>{1, 8});

  auto t = fixture_machine("turnstile.fsm");
  auto tt = build_testing_tree(t, fixture_suite("spyh-suite.txt", t.inputs()));
  auto tm = compute_apartness(tt);
  try {
    basis_from_cover(tt, words(t.inputs(), {"ε", "p"}), tm);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPairwiseApart);
  }
}

TEST_CASE("checker preconditions") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  MealyMachine partial(Alphabet({"a"}), Alphabet({"0"}));
  partial.add_state("s");
  CHECK(kind([&] { check_kA(partial, {}, std::vector<Word>{{}}, 0); }) == ErrorKind::NotComplete);
  MealyMachine twins(Alphabet({"a"}), Alphabet({"0"}));
  twins.add_state("x");
  twins.add_state("y");
  twins.define(0, 0, 1, 0);
  twins.define(1, 0, 0, 0);
  CHECK(kind([&] { check_kA(twins, {}, std::vector<Word>{{}, {0}}, 0); }) == ErrorKind::NotMinimal);
  auto f = load("fig1-spec.fsm", "fig5-suite.txt", "fig5-cover.txt");
  CHECK(kind([&] { check_kA(f.spec, f.suite, words(f.spec.inputs(), {"ε", "a"}), 0); }) ==
        ErrorKind::CoverNotMinimal);
}

TEST_CASE("structured reports follow the schema") {
  auto f = load("appendixA-spec.fsm", "appendixA-suite.txt", "appendixA-cover.txt");
  auto doc = nlohmann::json::parse(render_structured(check_kA(f.spec, f.suite, f.cover, 1)));
  CHECK(doc["schema"] == "kacheck.report/1");
  CHECK(doc["mode"] == "kA");
  CHECK(doc["k"] == 1);
  CHECK(doc["cover"] == nlohmann::json::array({"ε", "r", "r r"}));
  CHECK(doc["conditions"]["condition1_violations"] ==
        nlohmann::json::array({nlohmann::json::array({"r r r l", "r r r"})}));
  CHECK(doc["conditions"]["frontier_complete"] == nlohmann::json::array({true}));
  CHECK(doc["reasons"].size() >= 1);
}

TEST_CASE("pruning") {
  auto f = load("fig1-spec.fsm", "fig5-suite.txt", "fig5-cover.txt");
  auto pruned = prune_suite(f.spec, f.suite, f.cover, 0, CheckMode::KA);
  auto expected = fixture_suite("fig5-pruned-suite.txt", f.spec.inputs());
  CHECK(pruned == expected.normalized());
  CHECK(prune_suite(f.spec, pruned, f.cover, 0, CheckMode::KA) == pruned);

  auto s = load("turnstile.fsm", "spyh-suite.txt", "spyh-cover.txt");
  try {
    prune_suite(s.spec, s.suite, s.cover, 1, CheckMode::KA);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InitialSuiteRejected);
  }
}

TEST_CASE("pruned Wp suites are accepted fixpoints and never larger") {
  std::mt19937_64 rng(71);
  std::size_t shrunk = 0;
  for (int n = 0; n < 20; ++n) {
    auto spec = ref::random_minimal_machine(rng, 2 + n % 3, 2, 2);
    auto cover = minimal_state_cover(spec).words;
    const std::size_t k = n % 2;
    auto suite = generate_wp(spec, cover, k, default_identifiers(spec, Method::Wp));
    auto pruned = prune_suite(spec, suite, cover, k, CheckMode::KA);
    CHECK(check_kA(spec, pruned, cover, k).accepted());
    CHECK(pruned.total_length() <= suite.total_length());
    shrunk += pruned.total_length() < suite.total_length();
    for (const auto& t : pruned.maximal()) {
      auto without = pruned;
      without.remove(t);
      CHECK_FALSE(check_kA(spec, without, cover, k).accepted());
    }
  }
  MESSAGE(shrunk << " of 20 Wp suites shrank");
  CHECK(shrunk > 0);
}

namespace {

struct Instance {
  MealyMachine spec;
  std::vector<Word> cover;
  std::size_t k;
  TestSuite suite;
};

// Random specs with suites that are sometimes accepted: Wp suites with
// random tests removed or added.
std::vector<Instance> instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int n = 0; n < count; ++n) {
    auto spec = ref::random_minimal_machine(rng, 2 + n % 3, 2, 2);
    auto cover = minimal_state_cover(spec).words;
    const std::size_t k = n % 3;
    auto suite = generate_wp(spec, cover, k, default_identifiers(spec, Method::Wp));
    auto tests = suite.maximal();
    if (n % 2) suite.remove(tests[rng() % tests.size()]);
    out.push_back({std::move(spec), std::move(cover), k, std::move(suite)});
  }
  return out;
}

}  // namespace

TEST_CASE("accepted instances have all of F^{<k} identified and consistent strata") {
  std::size_t accepted = 0;
  for (auto& in : instances(73, 60)) {
    auto r = check_kA(in.spec, in.suite, in.cover, in.k);
    if (!r.accepted()) continue;
    ++accepted;
    auto a = analyze_suite(in.spec, in.suite, in.cover);
    for (auto q : a.strat.frontier_below(in.k)) CHECK(a.strat.identified(q));
    for (std::size_t i = 0; i <= in.k; ++i)
      for (std::size_t j = i + 1; j <= in.k; ++j)
        for (auto q : a.strat.frontier(i))
          for (auto x : a.strat.frontier(j))
            CHECK((a.strat.candidates[q] == a.strat.candidates[x] || a.matrix.apart(q, x)));
  }
  CHECK(accepted > 10);
}

TEST_CASE("conditions (1) and (2) agree when F^k is identified") {
  std::size_t compared = 0;
  for (auto& in : instances(79, 80)) {
    auto a = analyze_suite(in.spec, in.suite, in.cover);
    if (!a.basis_problems.empty()) continue;
    bool identified = true;
    for (auto q : a.strat.frontier(in.k)) identified &= a.strat.identified(q);
    if (!identified) continue;
    ++compared;
    CHECK(check_condition1(a.strat, a.matrix, in.k).empty() ==
          check_condition2(a.strat, a.matrix, in.k).empty());
  }
  CHECK(compared > 10);
}

TEST_CASE("stratification levels are distances from the basis") {
  for (auto& in : instances(83, 30)) {
    auto a = analyze_suite(in.spec, in.suite, in.cover);
    for (NodeId q = 0; q < a.tree.size(); ++q) {
      int d = 0;
      NodeId x = q;
      while (!a.strat.in_basis(x)) {
        x = a.tree.parent(x);
        ++d;
      }
      CHECK(a.strat.level[q] == d - 1);
    }
  }
}

TEST_CASE("extending tests below F^k keeps the verdict") {
  std::mt19937_64 rng(89);
  std::size_t checked = 0;
  for (auto& in : instances(97, 40)) {
    if (!check_kA(in.spec, in.suite, in.cover, in.k).accepted()) continue;
    auto a = analyze_suite(in.spec, in.suite, in.cover);
    auto bigger = in.suite;
    for (int e = 0; e < 5; ++e) {
      NodeId q = rng() % a.tree.size();
      if (a.strat.level[q] < static_cast<int>(in.k)) continue;
      auto t = a.tree.access(q);
      for (int j = 0, len = 1 + rng() % 4; j < len; ++j) t.push_back(rng() % 2);
      bigger.add(t);
    }
    ++checked;
    CHECK(check_kA(in.spec, bigger, in.cover, in.k).accepted());
  }
  CHECK(checked > 5);
}

TEST_CASE("parallel condition (1) matches the serial reference") {
  for (auto& in : instances(101, 40)) {
    auto a = analyze_suite(in.spec, in.suite, in.cover);
    CHECK(check_condition1(a.strat, a.matrix, in.k) == ref::condition1_serial(a.strat, a.matrix, in.k));
  }
}
