// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kac/checker.hpp"
#include "kac/fault_domains.hpp"
#include "kac/fixtures.hpp"
#include "kac/generators.hpp"
#include "kac/io.hpp"
#include "kac/kernels.hpp"
#include "kac/report.hpp"
#include "kac/reproduce.hpp"
#include "reference.hpp"

using namespace kac;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok &= cond;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Word wd(const MealyMachine& m, const std::string& s) { return parse_word(s, m.inputs()); }

std::string out_on(const MealyMachine& m, const Word& w) {
  auto r = run(m, m.initial(), w);
  if (!r) return "-";
  std::string s;
  for (auto o : r->outputs) s += m.outputs().name(o) + " ";
  return s;
}

// Passes the suite, is in U_1^A and is told apart by `word`.
void story(Outcome& o, const char* spec_file, const char* impl_file, const char* suite_file,
           const char* cover_file, const std::string& word) {
  const auto spec = fixture_machine(spec_file);
  const auto impl = fixture_machine(impl_file);
  const auto suite = fixture_suite(suite_file, spec.inputs());
  const auto cover = fixture_words(cover_file, spec.inputs());
  o.require(passes(impl, spec, suite).passed, std::string(impl_file) + " fails its suite");
  o.require(member(impl, FaultDomain::uka(1, cover)), std::string(impl_file) + " not in U_1^A");
  o.require(!equivalent(spec, impl).equivalent(), std::string(impl_file) + " is equivalent");
  o.require(out_on(spec, wd(spec, word)) != out_on(impl, wd(spec, word)),
            word + " does not distinguish");
}

Outcome reproduce_ok(const char* name, double limit) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = reproduce(name);
  const double t = seconds_since(t0);
  o.require(r.ok(), std::string("reproduce ") + name + " reports a mismatch");
  o.require(t < limit, std::string("reproduce ") + name + " took " + std::to_string(t) + " s");
  return o;
}

Outcome c1() {
  auto o = reproduce_ok("spyh", 1.0);
  const auto spec = fixture_machine("turnstile.fsm");
  const auto suite = fixture_suite("spyh-suite.txt", spec.inputs());
  std::vector<std::string> expected{"c c c p", "c c p p", "c p p p", "p c p c p", "p p p"};
  std::vector<std::string> got;
  for (const auto& t : suite.maximal()) got.push_back(format_word(t, spec.inputs()));
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  o.require(got == expected, "suite differs from {cccp, ccpp, cppp, pcpcp, ppp}");
  story(o, "turnstile.fsm", "fig3-impl.fsm", "spyh-suite.txt", "spyh-cover.txt", "c p c p");
  return o;
}

Outcome c2() {
  auto o = reproduce_ok("spy", 1.0);
  auto h = reproduce_ok("h", 1.0);
  o.require(h.ok, h.detail);
  story(o, "spy-spec.fsm", "spy-impl.fsm", "spy-suite.txt", "spy-cover.txt", "a a b");
  story(o, "h-spec.fsm", "h-impl.fsm", "h-suite.txt", "h-cover.txt", "c b c");
  return o;
}

Outcome c3() {
  Outcome o;
  const auto spec = fixture_machine("fig1-spec.fsm");
  const auto a = analyze_suite(spec, fixture_suite("fig5-suite.txt", spec.inputs()),
                               fixture_words("fig5-cover.txt", spec.inputs()));
  const std::vector<std::pair<NodeId, std::vector<NodeId>>> table{
      {2, {0}},     {5, {8}},        {9, {0}},        {12, {1}},       {3, {1}},
      {10, {1}},    {6, {0, 8}},     {13, {0, 8}},    {4, {0, 1, 8}},  {7, {0, 1, 8}},
      {11, {0, 1, 8}}, {14, {0, 1, 8}}};
  o.require(a.tree.size() == 15, "tree has " + std::to_string(a.tree.size()) + " nodes");
  for (const auto& [q, c] : table)
    o.require(a.strat.candidate_nodes(q) == c, "C(" + std::to_string(q) + ") differs");
  return o;
}

Outcome c4() {
  Outcome o;
  const auto spec = fixture_machine("fig1-spec.fsm");
  const auto& in = spec.inputs();
  const auto cover = fixture_words("fig5-cover.txt", in);
  o.require(check_kA(spec, fixture_suite("fig5-suite.txt", in), cover, 0).accepted(),
            "four-test suite not accepted");
  o.require(check_kA(spec, fixture_suite("fig5-pruned-suite.txt", in), cover, 0).accepted(),
            "b b a variant not accepted");
  const auto lr = fixture_machine("appendixA-spec.fsm");
  const auto lr_cover = fixture_words("appendixA-cover.txt", lr.inputs());
  const auto r = check_kA(lr, fixture_suite("appendixA-suite.txt", lr.inputs()), lr_cover, 1);
  o.require(!r.accepted(), "l/r suite accepted at k = 1");
  // t6 and t13 of the drawn tree are the nodes r r r and r r r l.
  const auto t6 = wd(lr, "r r r"), t13 = wd(lr, "r r r l");
  bool pair = false;
  for (const auto& v : r.condition1_violations) {
    const auto& q = v.q.access;
    const auto& s = v.r.access;
    pair |= (q == t6 && s == t13) || (q == t13 && s == t6);
  }
  o.require(pair, "pair (t6, t13) not reported");
  return o;
}

Outcome c5() {
  Outcome o;
  o.require(bound_states(55, 13, 2) == 9309, "bound is " + std::to_string(bound_states(55, 13, 2)));
  return o;
}

Outcome c6() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6);
  for (int n = 0; n < 200 && o.ok; ++n) {
    const auto tree = ref::random_tree(rng, 2 + rng() % 299, 2 + n % 3, 2 + n % 2);
    const auto fast = compute_apartness(tree);
    const auto slow = ref::naive_apartness(tree);
    const auto N = tree.size();
    for (NodeId q = 0; q < N; ++q)
      for (NodeId r = 0; r < N; ++r)
        o.require(fast.apart(q, r) == bool(slow[std::size_t(q) * N + r]),
                  "tree " + std::to_string(n) + " differs at (" + std::to_string(q) + ", " +
                      std::to_string(r) + ")");
  }
  const double t = seconds_since(t0);
  o.require(t < 60, "took " + std::to_string(t) + " s");
  return o;
}

struct Instance {
  MealyMachine spec;
  std::vector<Word> cover;
  std::size_t k;
  TestSuite suite;
};

std::vector<Instance> accepted_instances;

Outcome c7() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const auto spec = ref::random_minimal_machine(rng, 2 + n % 4, 2 + n % 2, 2);
    const auto cover = minimal_state_cover(spec).words;
    for (auto method : {Method::Wp, Method::Hsi})
      for (std::size_t k = 0; k < 2; ++k) {
        const auto fam = default_identifiers(spec, method);
        auto suite = method == Method::Wp ? generate_wp(spec, cover, k, fam)
                                          : generate_hsi(spec, cover, k, fam);
        const bool ok = check_kA(spec, suite, cover, k).accepted();
        o.require(ok, "spec " + std::to_string(n) + " k = " + std::to_string(k) + " rejected");
        if (ok) accepted_instances.push_back({spec, cover, k, std::move(suite)});
      }
  }
  const double t = seconds_since(t0);
  o.require(t < 300, "took " + std::to_string(t) + " s");
  return o;
}

struct Enumerated {
  std::size_t machines = 0, violations = 0, outside = 0;
};
Enumerated enumerated;

Outcome c8() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  for (int n = 0; n < 20; ++n) {
    const std::size_t states = 1 + n % 3;
    const auto spec = ref::random_minimal_machine(rng, states, 2, 2);
    const auto cover = minimal_state_cover(spec).words;
    for (std::size_t k = 0; k < 2; ++k) {
      // |A| + k is capped at 3 so that the count stays below 10^6.
      const auto bound = std::min<std::size_t>(states + k, 3);
      const auto suite = generate_wp(spec, cover, k, default_identifiers(spec, Method::Wp));
      const auto sweep = enumeration_sweep(spec, suite, cover, k, bound, 1'000'000);
      enumerated.machines += sweep.machines;
      enumerated.violations += sweep.violations.size();
      if (states + k == bound) enumerated.outside += sweep.outside_domain.size();
      o.require(sweep.violations.empty(), "spec " + std::to_string(n) + " k = " +
                                              std::to_string(k) + ": passing inequivalent machine");
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 600, "took " + std::to_string(t) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(enumerated.machines) + " machines";
  return o;
}

Outcome c9() {
  Outcome o;
  o.require(!accepted_instances.empty(), "no accepted instances");
  std::size_t mutants = 0;
  for (std::size_t n = 0; n < accepted_instances.size(); ++n) {
    const auto& in = accepted_instances[n];
    const auto sweep = mutation_sweep(in.spec, in.suite, in.cover, in.k, 9 + n, 1000);
    mutants += sweep.samples;
    o.require(sweep.non_members == 0 && sweep.incomplete == 0,
              "instance " + std::to_string(n) + ": sampler left the domain");
    o.require(sweep.violating_seeds.empty(),
              "instance " + std::to_string(n) + ": seed " +
                  (sweep.violating_seeds.empty() ? "" : std::to_string(sweep.violating_seeds[0])) +
                  " passes but is inequivalent");
  }
  if (o.ok) o.detail = std::to_string(mutants) + " mutants";
  return o;
}

Outcome c10() {
  Outcome o;
  o.require(enumerated.machines > 0, "criterion 8 did not enumerate");
  o.require(enumerated.outside == 0,
            std::to_string(enumerated.outside) + " machines outside U_k^A ∪ U^A");
  return o;
}

Outcome c11() {
  Outcome o;
  const auto spec = fixture_machine("fig6-spec.fsm");
  const auto suite = fixture_suite("fig6-suite.txt", spec.inputs());
  const auto cover = fixture_words("fig6-cover.txt", spec.inputs());
  const auto r = check_kA(spec, suite, cover, 0);
  o.require(!r.accepted(), "suite {ab} accepted");
  const auto text = render_text(r);
  o.require(text.find("UNKNOWN") != std::string::npos, "report does not say unknown");
  const auto sweep = enumeration_sweep(spec, suite, cover, 0, 1, 1'000'000);
  o.require(sweep.connected > 0, "nothing enumerated");
  o.require(sweep.violations.empty(), "a one-state machine passes {ab} and differs");
  o.require(sweep.outside_domain.empty(), "a one-state machine is outside U_0^{ε}");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"spyh incompleteness reproduction", c1},
      {"spy and h incompleteness reproductions", c2},
      {"candidate-set table", c3},
      {"checker acceptance fixtures", c4},
      {"state-count bound", c5},
      {"apartness matches the exhaustive oracle", c6},
      {"generated Wp and HSI suites are accepted", c7},
      {"exhaustive enumeration finds no passing inequivalent machine", c8},
      {"seeded mutants are killed or equivalent", c9},
      {"enumerated machines lie in U_k^A ∪ U^A", c10},
      {"one-state suite is unknown but complete", c11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("%-4s #%-2zu %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(t0), o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
