#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "kac/mealy.hpp"
#include "kac/test_suite.hpp"
#include "kac/word.hpp"

namespace kac {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

/// Arena-backed observation tree. Node 0 is the root; child lists are kept
/// sorted by input so that two nodes can be compared with a merge scan.
class ObservationTree {
 public:
  explicit ObservationTree(Alphabet inputs, Alphabet outputs,
                           std::size_t node_budget = kDefaultNodeBudget);

  std::size_t size() const { return parent_.size(); }
  NodeId root() const { return 0; }

  /// Adds (or finds) the child of `q` on `input`. An existing child must
  /// carry the same output.
  NodeId add_child(NodeId q, Symbol input, Symbol output);
  /// Walks `word` from the root, creating nodes with outputs from `outputs`.
  NodeId add_path(std::span<const Symbol> word, std::span<const Symbol> outputs);

  NodeId parent(NodeId q) const { return parent_[q]; }
  Symbol input(NodeId q) const { return input_[q]; }
  Symbol output(NodeId q) const { return output_[q]; }
  std::span<const NodeId> children(NodeId q) const { return children_[q]; }
  NodeId child(NodeId q, Symbol i) const;
  std::size_t depth(NodeId q) const { return depth_[q]; }

  Word access(NodeId q) const;
  std::optional<NodeId> find(std::span<const Symbol> word) const;
  bool is_complete(NodeId q) const { return children_[q].size() == inputs_.size(); }

  /// f(q) = δ^S(q0, access(q)) when the tree was built from a spec.
  std::optional<StateId> spec_state(NodeId q) const {
    if (spec_state_.empty() || spec_state_[q] == kNoState) return std::nullopt;
    return spec_state_[q];
  }
  void set_spec_state(NodeId q, StateId s);

  const Alphabet& inputs() const { return inputs_; }
  const Alphabet& outputs() const { return outputs_; }

  /// Outputs along the path from `from` following `word`, if defined.
  std::optional<Word> run_outputs(NodeId from, std::span<const Symbol> word) const;

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  std::size_t budget_;
  std::vector<NodeId> parent_;
  std::vector<Symbol> input_;
  std::vector<Symbol> output_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<StateId> spec_state_;
};

/// Tree(S, T): nodes are {ε} ∪ Pref(T), outputs and spec_state annotations
/// come from the spec. Nodes are numbered in preorder with inputs sorted.
/// Throws TestUndefinedOnSpec, NodeBudgetExceeded.
ObservationTree build_testing_tree(const MealyMachine& spec, const TestSuite& suite,
                                   std::size_t node_budget = kDefaultNodeBudget);

/// Whether q ↦ δ^M(q0, access(q)) is a functional simulation tree → M.
bool check_functional_simulation(const ObservationTree& tree, const MealyMachine& m);

}  // namespace kac
