#include "kac/obs_tree.hpp"

#include <algorithm>

#include "kac/error.hpp"

namespace kac {

ObservationTree::ObservationTree(Alphabet inputs, Alphabet outputs, std::size_t node_budget)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), budget_(node_budget) {
  parent_.push_back(kNoNode);
  input_.push_back(0);
  output_.push_back(0);
  depth_.push_back(0);
  children_.emplace_back();
}

NodeId ObservationTree::child(NodeId q, Symbol i) const {
  const auto& cs = children_[q];
  auto it = std::lower_bound(cs.begin(), cs.end(), i,
                             [this](NodeId c, Symbol s) { return input_[c] < s; });
  if (it == cs.end() || input_[*it] != i) return kNoNode;
  return *it;
}

NodeId ObservationTree::add_child(NodeId q, Symbol input, Symbol output) {
  auto& cs = children_[q];
  auto it = std::lower_bound(cs.begin(), cs.end(), input,
                             [this](NodeId c, Symbol s) { return input_[c] < s; });
  if (it != cs.end() && input_[*it] == input) {
    if (output_[*it] != output)
      throw Error(ErrorKind::InvalidArgument, "conflicting output for an existing tree edge");
    return *it;
  }
  if (size() >= budget_)
    throw Error(ErrorKind::NodeBudgetExceeded,
                "observation tree exceeds the node budget of " + std::to_string(budget_));
  const NodeId id = static_cast<NodeId>(size());
  cs.insert(it, id);
  parent_.push_back(q);
  input_.push_back(input);
  output_.push_back(output);
  depth_.push_back(depth_[q] + 1);
  children_.emplace_back();
  if (!spec_state_.empty()) spec_state_.push_back(kNoState);
  return id;
}

NodeId ObservationTree::add_path(std::span<const Symbol> word, std::span<const Symbol> outputs) {
  NodeId q = root();
  for (std::size_t k = 0; k < word.size(); ++k) q = add_child(q, word[k], outputs[k]);
  return q;
}

Word ObservationTree::access(NodeId q) const {
  Word w(depth_[q]);
  for (std::size_t k = w.size(); k > 0; --k) {
    w[k - 1] = input_[q];
    q = parent_[q];
  }
  return w;
}

std::optional<NodeId> ObservationTree::find(std::span<const Symbol> word) const {
  NodeId q = root();
  for (Symbol i : word) {
    q = child(q, i);
    if (q == kNoNode) return std::nullopt;
  }
  return q;
}

void ObservationTree::set_spec_state(NodeId q, StateId s) {
  if (spec_state_.empty()) spec_state_.assign(size(), kNoState);
  spec_state_[q] = s;
}

std::optional<Word> ObservationTree::run_outputs(NodeId from, std::span<const Symbol> word) const {
  Word out;
  out.reserve(word.size());
  for (Symbol i : word) {
    from = child(from, i);
    if (from == kNoNode) return std::nullopt;
    out.push_back(output_[from]);
  }
  return out;
}

ObservationTree build_testing_tree(const MealyMachine& spec, const TestSuite& suite,
                                   std::size_t node_budget) {
  ObservationTree tree(spec.inputs(), spec.outputs(), node_budget);
  tree.set_spec_state(tree.root(), spec.initial());
  // Lexicographic insertion order numbers the nodes in preorder.
  for (const auto& test : suite.maximal()) {
    StateId q = spec.initial();
    NodeId node = tree.root();
    for (Symbol i : test) {
      auto t = spec.transition(q, i);
      if (!t)
        throw Error(ErrorKind::TestUndefinedOnSpec,
                    "test '" + format_word(test, spec.inputs()) + "' is undefined on the spec");
      node = tree.add_child(node, i, t->output);
      q = t->target;
      tree.set_spec_state(node, q);
    }
  }
  return tree;
}

bool check_functional_simulation(const ObservationTree& tree, const MealyMachine& m) {
  if (!(tree.inputs() == m.inputs())) return false;
  const auto translate = output_translation(m.outputs(), tree.outputs());
  std::vector<StateId> image(tree.size(), kNoState);
  image[tree.root()] = m.initial();
  // Parents precede children in the arena.
  for (NodeId q = 1; q < tree.size(); ++q) {
    auto t = m.transition(image[tree.parent(q)], tree.input(q));
    if (!t || translate[t->output] != tree.output(q)) return false;
    image[q] = t->target;
  }
  return true;
}

}  // namespace kac
