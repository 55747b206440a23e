#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kac/apartness.hpp"
#include "kac/basis.hpp"
#include "kac/mealy.hpp"
#include "kac/obs_tree.hpp"
#include "kac/test_suite.hpp"

namespace kac {

enum class CheckMode {
  KA,  // k-A-completeness: condition (F^k vs F^{<k})
  M,   // m-completeness, m = |B| + k: ancestor/descendant condition
};

/// Accepted means the sufficient condition holds and the suite is proven
/// complete. Rejected means "unknown": the condition is not necessary.
enum class Verdict { Accepted, Rejected };

struct NodeRef {
  NodeId node;
  Word access;
};

struct NodePair {
  NodeRef q, r;
};

struct CompletenessReport {
  CheckMode mode = CheckMode::KA;
  std::size_t k = 0;
  Verdict verdict = Verdict::Rejected;
  std::vector<std::string> reasons;

  Alphabet inputs;
  std::vector<Word> cover;
  std::size_t spec_states = 0;
  std::size_t basis_size = 0;
  std::size_t tree_nodes = 0;
  std::size_t maximal_tests = 0;

  bool basis_ok = false;
  bool basis_complete = false;
  std::vector<bool> frontier_complete;  // F^j for j < k
  std::vector<NodeRef> unidentified;
  std::vector<NodePair> condition1_violations;
  std::vector<NodePair> condition3_violations;

  bool accepted() const { return verdict == Verdict::Accepted; }
};

/// Tree, apartness and stratification for one (spec, suite, cover).
struct SuiteAnalysis {
  ObservationTree tree;
  ApartnessMatrix matrix;
  BasisStratification strat;
  std::vector<std::string> basis_problems;  // empty iff B is a valid basis
};

/// Builds Tree(S, T), runs the apartness algorithm and stratifies around the
/// nodes reached by `cover`. Basis defects are collected, not thrown.
SuiteAnalysis analyze_suite(const MealyMachine& spec, const TestSuite& suite,
                            std::span<const Word> cover);

/// Pairs (q, r), q ∈ F^k, r ∈ F^{<k}, with C(q) ≠ C(r) and q, r not apart.
/// Parallel over q.
std::vector<std::pair<NodeId, NodeId>> check_condition1(const BasisStratification& strat,
                                                        const ApartnessMatrix& matrix,
                                                        std::size_t k);

struct Condition2Violation {
  NodeId q, r, s;
};

/// Triples with s ∈ B, q ∈ F^k, r ∈ F^{<k}: s # q but neither s # r nor q # r.
std::vector<Condition2Violation> check_condition2(const BasisStratification& strat,
                                                  const ApartnessMatrix& matrix, std::size_t k);

/// Pairs q →+ r inside F^{≤k} with C(q) ≠ C(r) and q, r not apart.
std::vector<std::pair<NodeId, NodeId>> check_condition3(const ObservationTree& tree,
                                                        const BasisStratification& strat,
                                                        const ApartnessMatrix& matrix,
                                                        std::size_t k);

/// Verifies the spec/cover/suite preconditions. Throws NotCompleteSpec,
/// NotMinimalSpec, NotInitiallyConnected, CoverNotMinimal or
/// TestUndefinedOnSpec.
void check_preconditions(const MealyMachine& spec, const TestSuite& suite,
                         std::span<const Word> cover);

/// Sufficient condition for k-A-completeness, A = the supplied cover.
CompletenessReport check_kA(const MealyMachine& spec, const TestSuite& suite,
                            std::span<const Word> cover, std::size_t k);

/// Sufficient condition for m-completeness with m = |Q^S| + k.
CompletenessReport check_m(const MealyMachine& spec, const TestSuite& suite,
                           std::span<const Word> cover, std::size_t k);

CompletenessReport check(CheckMode mode, const MealyMachine& spec, const TestSuite& suite,
                         std::span<const Word> cover, std::size_t k);

/// Greedy pruning: maximal tests are visited in reverse lexicographic order;
/// each is dropped, or failing that shortened by its last input, when the
/// checker still accepts the result. Repeats until neither applies to any
/// maximal test. Throws InitialSuiteRejected.
TestSuite prune_suite(const MealyMachine& spec, const TestSuite& suite,
                      std::span<const Word> cover, std::size_t k, CheckMode mode);

}  // namespace kac
