#include "kac/apartness.hpp"

#include <algorithm>

#include "kac/error.hpp"

namespace kac {

std::size_t ApartnessMatrix::count_apart_pairs() const {
  std::size_t count = 0;
  for (NodeId q = 0; q < n_; ++q)
    for (NodeId r = q + 1; r < n_; ++r) count += apart(q, r);
  return count;
}

namespace {

struct Frame {
  NodeId a, b;
  std::size_t ia = 0, ib = 0;
};

}  // namespace

ApartnessMatrix compute_apartness(const ObservationTree& tree) {
  if (tree.inputs().size() >= ApartnessMatrix::kNone)
    throw Error(ErrorKind::InvalidArgument, "too many inputs for the apartness matrix");
  const std::size_t n = tree.size();
  ApartnessMatrix matrix(n);
  std::vector<std::uint8_t> visited(n * n, 0);
  auto seen = [&](NodeId a, NodeId b) -> std::uint8_t& {
    return a < b ? visited[std::size_t(a) * n + b] : visited[std::size_t(b) * n + a];
  };

  std::vector<Frame> stack;
  for (NodeId q = 0; q < n; ++q) {
    for (NodeId q2 = q + 1; q2 < n; ++q2) {
      if (seen(q, q2)) continue;
      stack.push_back({q, q2});
      while (!stack.empty()) {
        const std::size_t top = stack.size() - 1;
        const NodeId a = stack[top].a;
        const NodeId b = stack[top].b;
        auto la = tree.children(a);
        auto lb = tree.children(b);
        bool descended = false;
        while (stack[top].ia < la.size() && stack[top].ib < lb.size() && !matrix.apart(a, b)) {
          const NodeId r = la[stack[top].ia];
          const NodeId r2 = lb[stack[top].ib];
          if (tree.input(r) < tree.input(r2)) {
            ++stack[top].ia;
          } else if (tree.input(r2) < tree.input(r)) {
            ++stack[top].ib;
          } else if (tree.output(r) == tree.output(r2)) {
            if (!seen(r, r2)) {
              stack.push_back({r, r2});
              descended = true;
              break;
            }
            if (matrix.apart(r, r2)) matrix.set_apart(a, b, tree.input(r));
            ++stack[top].ia;
            ++stack[top].ib;
          } else {
            matrix.set_apart(a, b, tree.input(r));
          }
        }
        if (descended) continue;
        seen(a, b) = 1;
        stack.pop_back();
      }
    }
  }
  return matrix;
}

Word witness(const ApartnessMatrix& matrix, const ObservationTree& tree, NodeId q, NodeId r) {
  if (!matrix.apart(q, r))
    throw Error(ErrorKind::NotApart, "nodes " + std::to_string(q) + " and " + std::to_string(r) +
                                         " are not apart");
  Word w;
  while (true) {
    const Symbol i = *matrix.link(q, r);
    w.push_back(i);
    q = tree.child(q, i);
    r = tree.child(r, i);
    if (tree.output(q) != tree.output(r)) return w;
  }
}

}  // namespace kac
