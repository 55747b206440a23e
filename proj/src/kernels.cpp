#include "kac/kernels.hpp"

#include <algorithm>
#include <exception>

#include "kac/error.hpp"

namespace kac {

MutantOutcome evaluate_mutant(const MealyMachine& spec, const TestSuite& suite,
                              const MealyMachine& impl, const FaultDomain& domain) {
  MutantOutcome out;
  out.member = member(impl, domain);
  out.complete = is_complete(impl);
  out.passed = passes(impl, spec, suite).passed;
  out.equivalent = equivalent(spec, impl).equivalent();
  return out;
}

MutationSweep mutation_sweep(const MealyMachine& spec, const TestSuite& suite,
                             std::span<const Word> cover, std::size_t k,
                             std::uint64_t base_seed, std::uint64_t count,
                             const SamplerConfig& config) {
  const auto domain = FaultDomain::uka(k, {cover.begin(), cover.end()});
  std::uint64_t non_members = 0, incomplete = 0, killed = 0, equiv = 0;
  std::vector<std::uint64_t> violating;
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : non_members, incomplete, killed, equiv)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const auto seed = derive_seed(base_seed, static_cast<std::uint64_t>(i));
      const auto mutant = sample_mutant(spec, cover, k, seed, config);
      const auto o = evaluate_mutant(spec, suite, mutant.machine, domain);
      if (!o.member) ++non_members;
      if (!o.complete) ++incomplete;
      if (!o.passed) ++killed;
      else if (o.equivalent) ++equiv;
      else {
#pragma omp critical(kac_sweep_violation)
        violating.push_back(seed);
      }
    } catch (...) {
#pragma omp critical(kac_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(violating.begin(), violating.end());
  return {count, non_members, incomplete, killed, equiv, std::move(violating)};
}

EnumeratedOutcome classify_enumerated(const MealyMachine& spec, const TestSuite& suite,
                                      const FaultDomain& uka, const FaultDomain& ua,
                                      const MealyMachine& m) {
  EnumeratedOutcome out;
  out.connected = is_initially_connected(m);
  if (!out.connected) return out;
  out.in_uka = member(m, uka);
  out.in_ua = member(m, ua);
  out.passed = passes(m, spec, suite).passed;
  out.equivalent = out.passed && equivalent(spec, m).equivalent();
  return out;
}

EnumerationSweep enumeration_sweep(const MealyMachine& spec, const TestSuite& suite,
                                   std::span<const Word> cover, std::size_t k,
                                   std::size_t max_states, std::uint64_t budget) {
  const MachineEnumerator machines(spec.inputs(), spec.outputs(), max_states, budget);
  const auto uka = FaultDomain::uka(k, {cover.begin(), cover.end()});
  const auto ua = FaultDomain::ua({cover.begin(), cover.end()});
  std::uint64_t connected = 0, in_uka = 0, in_ua = 0, passing = 0;
  std::vector<std::uint64_t> violations, outside;
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(machines.count());
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : connected, in_uka, in_ua, passing)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const auto idx = static_cast<std::uint64_t>(i);
      const auto o = classify_enumerated(spec, suite, uka, ua, machines.at(idx));
      if (!o.connected) continue;
      ++connected;
      if (o.in_uka) ++in_uka;
      if (o.in_ua) ++in_ua;
      if (o.passed) ++passing;
      if (o.passed && !o.equivalent) {
#pragma omp critical(kac_enum_violation)
        violations.push_back(idx);
      }
      if (!o.in_uka && !o.in_ua) {
#pragma omp critical(kac_enum_outside)
        outside.push_back(idx);
      }
    } catch (...) {
#pragma omp critical(kac_enum_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(violations.begin(), violations.end());
  std::sort(outside.begin(), outside.end());
  return {machines.count(), connected, in_uka, in_ua, passing, std::move(violations),
          std::move(outside)};
}

}  // namespace kac
