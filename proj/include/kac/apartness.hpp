#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kac/obs_tree.hpp"

namespace kac {

/// Symmetric apartness relation over the nodes of one observation tree.
/// For every apart pair the matrix keeps the input on which the pair was
/// found apart: either the children on that input disagree on output, or
/// they are apart themselves. Following these links rebuilds a witness.
class ApartnessMatrix {
 public:
  ApartnessMatrix() = default;
  explicit ApartnessMatrix(std::size_t n) : n_(n), link_(n * n, kNone) {}

  std::size_t size() const { return n_; }
  bool apart(NodeId q, NodeId r) const { return link_[index(q, r)] != kNone; }
  std::optional<Symbol> link(NodeId q, NodeId r) const {
    auto l = link_[index(q, r)];
    if (l == kNone) return std::nullopt;
    return Symbol(l);
  }
  void set_apart(NodeId q, NodeId r, Symbol via) {
    link_[index(q, r)] = static_cast<std::uint16_t>(via);
    link_[index(r, q)] = static_cast<std::uint16_t>(via);
  }

  std::size_t count_apart_pairs() const;
  bool operator==(const ApartnessMatrix&) const = default;

  static constexpr std::uint16_t kNone = 0xFFFF;

 private:
  std::size_t index(NodeId q, NodeId r) const { return std::size_t(q) * n_ + r; }
  std::size_t n_ = 0;
  std::vector<std::uint16_t> link_;
};

/// Merge-scan apartness over sorted child lists with a memoized visited
/// table; Θ(N²) in the number of tree nodes. Recursion is replaced by an
/// explicit stack so deep trees are fine.
ApartnessMatrix compute_apartness(const ObservationTree& tree);

/// A word defined from both nodes on which their outputs differ.
/// Throws NotApart.
Word witness(const ApartnessMatrix& matrix, const ObservationTree& tree, NodeId q, NodeId r);

}  // namespace kac
