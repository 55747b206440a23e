#include "doctest.h"
#include "kac/checker.hpp"
#include "kac/generators.hpp"
#include "kac/kernels.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace kac;
using namespace kac::test;

namespace {

bool same(const MutationSweep& a, const MutationSweep& b) {
  return a.samples == b.samples && a.non_members == b.non_members &&
         a.incomplete == b.incomplete && a.killed == b.killed && a.equivalent == b.equivalent &&
         a.violating_seeds == b.violating_seeds;
}

bool same(const EnumerationSweep& a, const EnumerationSweep& b) {
  return a.machines == b.machines && a.connected == b.connected && a.in_uka == b.in_uka &&
         a.in_ua == b.in_ua && a.passing == b.passing && a.violations == b.violations &&
         a.outside_domain == b.outside_domain;
}

}  // namespace

TEST_CASE("mutation sweeps match the serial reference") {
  auto spec = fixture_machine("turnstile.fsm");
  auto cover = fixture_words("spyh-cover.txt", spec.inputs());
  auto weak = fixture_suite("spyh-suite.txt", spec.inputs());
  auto par = mutation_sweep(spec, weak, cover, 1, 0, 5000);
  auto ser = ref::mutation_sweep_serial(spec, weak, cover, 1, 0, 5000);
  CHECK(same(par, ser));
  CHECK(par.samples == 5000);
  CHECK(par.killed + par.equivalent + par.violating_seeds.size() + par.non_members + par.incomplete ==
        5000);
  CHECK_FALSE(par.violating_seeds.empty());
  CHECK(std::is_sorted(par.violating_seeds.begin(), par.violating_seeds.end()));
}

TEST_CASE("enumeration sweeps match the serial reference") {
  std::mt19937_64 rng(127);
  for (int n = 0; n < 4; ++n) {
    auto spec = ref::random_minimal_machine(rng, 2, 2, 2);
    auto cover = minimal_state_cover(spec).words;
    auto suite = n % 2 ? ref::random_suite(rng, 2, 3, 3)
                       : generate_wp(spec, cover, 1, default_identifiers(spec, Method::Wp));
    auto par = enumeration_sweep(spec, suite, cover, 1, 3, 1'000'000);
    auto ser = ref::enumeration_sweep_serial(spec, suite, cover, 1, 3, 1'000'000);
    CHECK(same(par, ser));
    CHECK(par.machines == enumeration_count(2, 2, 3));
    if (n % 2 == 0) CHECK(par.violations.empty());
    CHECK(par.outside_domain.empty());
  }
}

TEST_CASE("evaluate_mutant on the worked implementation") {
  auto spec = fixture_machine("turnstile.fsm");
  auto impl = fixture_machine("fig3-impl.fsm");
  auto cover = fixture_words("spyh-cover.txt", spec.inputs());
  auto o = evaluate_mutant(spec, fixture_suite("spyh-suite.txt", spec.inputs()), impl,
                           FaultDomain::uka(1, cover));
  CHECK(o.member);
  CHECK(o.complete);
  CHECK(o.passed);
  CHECK_FALSE(o.equivalent);
  CHECK(o.violation());
}
