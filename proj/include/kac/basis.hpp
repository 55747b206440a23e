#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kac/apartness.hpp"
#include "kac/obs_tree.hpp"

namespace kac {

/// Subset of the basis, stored as a bitset over basis indices.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::size_t universe) : universe_(universe), bits_((universe + 63) / 64) {}

  void insert(std::size_t b) { bits_[b / 64] |= std::uint64_t{1} << (b % 64); }
  bool contains(std::size_t b) const { return bits_[b / 64] >> (b % 64) & 1; }
  std::size_t count() const;
  std::vector<std::size_t> members() const;
  std::size_t universe() const { return universe_; }

  bool operator==(const CandidateSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A basis B of an observation tree together with the frontiers F^k
/// (nodes at distance k+1 from B) and the candidate set of every node.
struct BasisStratification {
  std::vector<NodeId> basis;
  std::vector<int> basis_index;  // per node, -1 when not in B
  std::vector<int> level;        // per node: -1 for B, k for F^k
  std::vector<std::vector<NodeId>> strata;
  std::vector<CandidateSet> candidates;

  bool in_basis(NodeId q) const { return basis_index[q] >= 0; }
  bool identified(NodeId q) const { return candidates[q].count() == 1; }
  /// F^j, or empty when the tree has no nodes at that distance.
  std::span<const NodeId> frontier(std::size_t j) const;
  /// Nodes of F^0 ∪ ... ∪ F^{k-1}.
  std::vector<NodeId> frontier_below(std::size_t k) const;
  /// Basis nodes of a candidate set.
  std::vector<NodeId> candidate_nodes(NodeId q) const;
};

/// Stratifies the tree around `basis` without validating it.
BasisStratification stratify(const ObservationTree& tree, std::span<const NodeId> basis,
                             const ApartnessMatrix& matrix);

/// B = nodes reached by the cover words. Throws CoverWordMissing,
/// NotAncestorClosed or NotPairwiseApart (naming the offending words).
BasisStratification basis_from_cover(const ObservationTree& tree, std::span<const Word> cover,
                                     const ApartnessMatrix& matrix);

struct MissingInputs {
  NodeId node;
  std::vector<Symbol> inputs;
};

struct StrataCompleteness {
  std::vector<MissingInputs> basis;
  std::vector<std::vector<MissingInputs>> frontier;  // frontier[j] for j < k

  bool basis_complete() const { return basis.empty(); }
  bool frontier_complete(std::size_t j) const { return frontier[j].empty(); }
  bool complete() const;
};

/// Which nodes of B and F^{<k} lack which inputs.
StrataCompleteness strata_completeness(const ObservationTree& tree,
                                       const BasisStratification& strat, std::size_t k);

}  // namespace kac
