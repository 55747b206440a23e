#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kac/fault_domains.hpp"
#include "kac/mealy.hpp"
#include "kac/test_suite.hpp"

namespace kac {

/// Outcome of checking one candidate implementation against a suite.
struct MutantOutcome {
  bool member = false;      // in the domain it was drawn from
  bool complete = false;
  bool passed = false;      // passes the suite
  bool equivalent = false;  // equivalent to the spec
  bool violation() const { return passed && !equivalent; }
};

MutantOutcome evaluate_mutant(const MealyMachine& spec, const TestSuite& suite,
                              const MealyMachine& impl, const FaultDomain& domain);

struct MutationSweep {
  std::uint64_t samples = 0;
  std::uint64_t non_members = 0;
  std::uint64_t incomplete = 0;
  std::uint64_t killed = 0;      // fail the suite
  std::uint64_t equivalent = 0;  // pass and are equivalent
  std::vector<std::uint64_t> violating_seeds;  // pass but inequivalent, sorted
};

/// `count` U_k^A mutants drawn with seeds derive_seed(base_seed, i), run in
/// parallel. Counts do not depend on the thread count.
MutationSweep mutation_sweep(const MealyMachine& spec, const TestSuite& suite,
                             std::span<const Word> cover, std::size_t k,
                             std::uint64_t base_seed, std::uint64_t count,
                             const SamplerConfig& config = {});

struct EnumerationSweep {
  std::uint64_t machines = 0;
  std::uint64_t connected = 0;   // initially connected ones, the only ones classified
  std::uint64_t in_uka = 0;
  std::uint64_t in_ua = 0;
  std::uint64_t passing = 0;
  std::vector<std::uint64_t> violations;      // pass but inequivalent
  std::vector<std::uint64_t> outside_domain;  // not in U_k^A ∪ U^A
};

/// Every complete machine with at most `max_states` states over the spec's
/// alphabets, checked against the suite and classified into U_k^A / U^A.
/// Throws BudgetExceeded.
EnumerationSweep enumeration_sweep(const MealyMachine& spec, const TestSuite& suite,
                                   std::span<const Word> cover, std::size_t k,
                                   std::size_t max_states, std::uint64_t budget);

/// Per-machine step of enumeration_sweep, shared with the serial reference.
struct EnumeratedOutcome {
  bool connected = false;
  bool in_uka = false;
  bool in_ua = false;
  bool passed = false;
  bool equivalent = false;
};

EnumeratedOutcome classify_enumerated(const MealyMachine& spec, const TestSuite& suite,
                                      const FaultDomain& uka, const FaultDomain& ua,
                                      const MealyMachine& m);

}  // namespace kac
