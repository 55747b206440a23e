#pragma once

// Straightforward implementations kept as oracles for the tests and as
// baselines for the benchmarks. Nothing here is tuned.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "kac/basis.hpp"
#include "kac/kernels.hpp"
#include "kac/mealy.hpp"
#include "kac/obs_tree.hpp"

namespace kac::ref {

/// Apartness straight from the definition: q # r iff some word defined
/// from both nodes produces different outputs. Row-major n×n booleans.
std::vector<std::uint8_t> naive_apartness(const ObservationTree& tree);
std::vector<std::uint8_t> naive_apartness_omp(const ObservationTree& tree);

/// Whether `word` is defined from both nodes and the outputs differ.
bool separates(const ObservationTree& tree, NodeId q, NodeId r, std::span<const Symbol> word);

/// Minimum over one BFS per source.
Eccentricity naive_eccentricity(const MealyMachine& m, std::span<const StateId> sources);

/// Shortest separating word by enumerating I^{≤max_len}.
std::optional<Word> brute_separating_sequence(const MealyMachine& m, StateId q, StateId r,
                                              std::size_t max_len);

/// Equivalence of complete machines by comparing outputs on every word of
/// length n1 + n2 - 1.
bool brute_equivalent(const MealyMachine& m1, const MealyMachine& m2);

std::vector<std::pair<NodeId, NodeId>> condition1_serial(const BasisStratification& strat,
                                                         const ApartnessMatrix& matrix,
                                                         std::size_t k);

MutationSweep mutation_sweep_serial(const MealyMachine& spec, const TestSuite& suite,
                                    std::span<const Word> cover, std::size_t k,
                                    std::uint64_t base_seed, std::uint64_t count,
                                    const SamplerConfig& config = {});

EnumerationSweep enumeration_sweep_serial(const MealyMachine& spec, const TestSuite& suite,
                                          std::span<const Word> cover, std::size_t k,
                                          std::size_t max_states, std::uint64_t budget);

/// Random instances.
Alphabet letters(std::size_t n, char first = 'a');
Alphabet digits(std::size_t n);

/// Complete, initially connected machine.
MealyMachine random_machine(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                            std::size_t outputs);
/// Complete, initially connected and minimal.
MealyMachine random_minimal_machine(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                                    std::size_t outputs);
/// Random partial machine: every transition is dropped with probability
/// `gap`; may be disconnected.
MealyMachine random_partial_machine(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                                    std::size_t outputs, double gap);

/// Tree with at most `max_nodes` nodes and random outputs.
ObservationTree random_tree(std::mt19937_64& rng, std::size_t max_nodes, std::size_t inputs,
                            std::size_t outputs);
/// Random suite of `tests` words with lengths in [1, max_len].
TestSuite random_suite(std::mt19937_64& rng, std::size_t inputs, std::size_t tests,
                       std::size_t max_len);

}  // namespace kac::ref
