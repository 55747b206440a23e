#include "kac/basis.hpp"

#include <bit>
#include <deque>

#include "kac/error.hpp"

namespace kac {

std::size_t CandidateSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

std::vector<std::size_t> CandidateSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < universe_; ++b)
    if (contains(b)) out.push_back(b);
  return out;
}

std::span<const NodeId> BasisStratification::frontier(std::size_t j) const {
  if (j >= strata.size()) return {};
  return strata[j];
}

std::vector<NodeId> BasisStratification::frontier_below(std::size_t k) const {
  std::vector<NodeId> out;
  for (std::size_t j = 0; j < k && j < strata.size(); ++j)
    out.insert(out.end(), strata[j].begin(), strata[j].end());
  return out;
}

std::vector<NodeId> BasisStratification::candidate_nodes(NodeId q) const {
  std::vector<NodeId> out;
  for (auto b : candidates[q].members()) out.push_back(basis[b]);
  return out;
}

BasisStratification stratify(const ObservationTree& tree, std::span<const NodeId> basis,
                             const ApartnessMatrix& matrix) {
  BasisStratification s;
  const std::size_t n = tree.size();
  s.basis.assign(basis.begin(), basis.end());
  s.basis_index.assign(n, -1);
  s.level.assign(n, -1);
  for (std::size_t b = 0; b < basis.size(); ++b) s.basis_index[basis[b]] = static_cast<int>(b);

  // Multi-source BFS from B; tree edges only point downwards.
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<NodeId> queue;
  for (NodeId b : basis) {
    dist[b] = 0;
    queue.push_back(b);
  }
  while (!queue.empty()) {
    NodeId q = queue.front();
    queue.pop_front();
    for (NodeId c : tree.children(q)) {
      if (dist[c] != SIZE_MAX) continue;
      dist[c] = dist[q] + 1;
      queue.push_back(c);
    }
  }
  for (NodeId q = 0; q < n; ++q) {
    if (dist[q] == 0 || dist[q] == SIZE_MAX) continue;
    const std::size_t k = dist[q] - 1;
    if (s.strata.size() <= k) s.strata.resize(k + 1);
    s.strata[k].push_back(q);
    s.level[q] = static_cast<int>(k);
  }

  s.candidates.assign(n, CandidateSet(basis.size()));
  for (NodeId q = 0; q < n; ++q)
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (!matrix.apart(q, basis[b])) s.candidates[q].insert(b);
  return s;
}

BasisStratification basis_from_cover(const ObservationTree& tree, std::span<const Word> cover,
                                     const ApartnessMatrix& matrix) {
  std::vector<NodeId> nodes;
  std::vector<bool> member(tree.size(), false);
  for (const auto& w : cover) {
    auto q = tree.find(w);
    if (!q)
      throw Error(ErrorKind::CoverWordMissing,
                  "cover word '" + format_word(w, tree.inputs()) + "' is not a tree node");
    if (member[*q]) continue;
    member[*q] = true;
    nodes.push_back(*q);
  }
  if (nodes.empty() || !member[tree.root()])
    throw Error(ErrorKind::NotAncestorClosed, "basis must contain the root (cover needs ε)");
  for (NodeId q : nodes)
    if (q != tree.root() && !member[tree.parent(q)])
      throw Error(ErrorKind::NotAncestorClosed,
                  "parent of '" + format_word(tree.access(q), tree.inputs()) +
                      "' is not in the basis");
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (!matrix.apart(nodes[a], nodes[b]))
        throw Error(ErrorKind::NotPairwiseApart,
                    "basis nodes '" + format_word(tree.access(nodes[a]), tree.inputs()) +
                        "' and '" + format_word(tree.access(nodes[b]), tree.inputs()) +
                        "' are not apart");
  return stratify(tree, nodes, matrix);
}

bool StrataCompleteness::complete() const {
  if (!basis.empty()) return false;
  for (const auto& f : frontier)
    if (!f.empty()) return false;
  return true;
}

namespace {

std::optional<MissingInputs> gaps(const ObservationTree& tree, NodeId q) {
  if (tree.is_complete(q)) return std::nullopt;
  MissingInputs m{q, {}};
  for (Symbol i = 0; i < tree.inputs().size(); ++i)
    if (tree.child(q, i) == kNoNode) m.inputs.push_back(i);
  return m;
}

}  // namespace

StrataCompleteness strata_completeness(const ObservationTree& tree,
                                       const BasisStratification& strat, std::size_t k) {
  StrataCompleteness report;
  for (NodeId b : strat.basis)
    if (auto g = gaps(tree, b)) report.basis.push_back(std::move(*g));
  report.frontier.resize(k);
  for (std::size_t j = 0; j < k; ++j)
    for (NodeId q : strat.frontier(j))
      if (auto g = gaps(tree, q)) report.frontier[j].push_back(std::move(*g));
  return report;
}

}  // namespace kac
