#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kac/mealy.hpp"
#include "kac/test_suite.hpp"

namespace kac {

/// U_m, U_k^A, U^A or a union of those.
class FaultDomain {
 public:
  enum class Kind { Um, UkA, UA, Union };

  static FaultDomain um(std::size_t m);
  static FaultDomain uka(std::size_t k, std::vector<Word> cover);
  static FaultDomain ua(std::vector<Word> cover);
  static FaultDomain union_of(std::vector<FaultDomain> parts);

  Kind kind() const { return kind_; }
  std::size_t m() const { return m_; }
  std::size_t k() const { return k_; }
  const std::vector<Word>& cover() const { return cover_; }
  const std::vector<FaultDomain>& parts() const { return parts_; }

  std::string describe(const Alphabet& inputs) const;

 private:
  Kind kind_ = Kind::Um;
  std::size_t m_ = 0;
  std::size_t k_ = 0;
  std::vector<Word> cover_;
  std::vector<FaultDomain> parts_;
};

/// Membership. U_k^A is decided through the eccentricity of the states
/// reached by A. Throws CoverWordUndefined.
bool member(const MealyMachine& m, const FaultDomain& domain);

/// Largest state count in U_k^A for a prefix-closed A with |A| = n and
/// |I| = l: n + (Σ_{j<k} l^j)(nl − n + 1); k = 0 gives n.
/// Throws InvalidArgument for n = 0, l = 0, or on overflow.
std::uint64_t bound_states(std::uint64_t n, std::uint64_t l, std::uint64_t k);

enum class EditKind { OutputFlip, TargetRedirect, ChainExtension };

struct Edit {
  EditKind kind;
  std::string description;
};

struct MutantRecord {
  MealyMachine machine;
  std::vector<Edit> edits;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

struct SamplerConfig {
  std::size_t min_edits = 1;
  std::size_t max_edits = 4;
  std::size_t max_attempts = 10'000;
};

std::string_view to_string(EditKind kind);

/// Random complete member of U_k^A, A = cover: the spec with output flips,
/// target redirects and grafted chains of at most k fresh states hanging
/// off cover-reached states. Unreachable states are dropped and membership
/// is re-checked; failures resample. Same (spec, cover, k, seed, config)
/// gives the same machine. Throws CoverNotMinimal, BudgetExhausted.
MutantRecord sample_mutant(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                           std::uint64_t seed, const SamplerConfig& config = {});

/// Random member of U^A: one cover word is redirected onto the state of a
/// no longer cover word, then extra random edits are applied.
MutantRecord sample_ua_mutant(const MealyMachine& spec, std::span<const Word> cover,
                              std::uint64_t seed, const SamplerConfig& config = {});

/// Σ_{s=1}^{max_states} (s·|O|)^(s·|I|), saturating at UINT64_MAX.
std::uint64_t enumeration_count(std::size_t inputs, std::size_t outputs, std::size_t max_states);

/// Every complete machine with 1..max_states states and initial state 0,
/// with no quotienting by isomorphism. Machines are addressable by index so
/// that sweeps can be sharded.
class MachineEnumerator {
 public:
  /// Throws BudgetExceeded when the count exceeds `budget`.
  MachineEnumerator(Alphabet inputs, Alphabet outputs, std::size_t max_states,
                    std::uint64_t budget = 10'000'000);

  std::uint64_t count() const { return count_; }
  MealyMachine at(std::uint64_t index) const;

  /// Streams machines in index order; false when exhausted.
  bool next(MealyMachine& out);

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  std::size_t max_states_;
  std::uint64_t count_;
  std::uint64_t cursor_ = 0;
};

struct Counterexample {
  MutantRecord mutant;
  Word distinguishing;
  std::uint64_t index = 0;  // position in the search sequence
};

/// First candidate (lowest index) that passes the suite but is not
/// equivalent to the spec. U_k^A and U^A are sampled from `seed`; U_m is
/// enumerated. Candidates are checked in parallel, the result does not
/// depend on the thread count.
std::optional<Counterexample> search_counterexample(const MealyMachine& spec,
                                                    const TestSuite& suite,
                                                    const FaultDomain& domain,
                                                    std::uint64_t budget, std::uint64_t seed,
                                                    const SamplerConfig& config = {});

/// Seed of the i-th sample drawn from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i);

}  // namespace kac
