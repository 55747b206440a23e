#include "kac/checker.hpp"

#include <algorithm>

#include "kac/error.hpp"

namespace kac {

namespace {

NodeRef ref(const ObservationTree& tree, NodeId q) { return {q, tree.access(q)}; }

std::string show(const ObservationTree& tree, NodeId q) {
  return "'" + format_word(tree.access(q), tree.inputs()) + "'";
}

std::string show_set(const BasisStratification& strat, const ObservationTree& tree, NodeId q) {
  std::string out = "{";
  bool first = true;
  for (NodeId b : strat.candidate_nodes(q)) {
    out += first ? "" : ", ";
    out += format_word(tree.access(b), tree.inputs());
    first = false;
  }
  return out + "}";
}

}  // namespace

SuiteAnalysis analyze_suite(const MealyMachine& spec, const TestSuite& suite,
                            std::span<const Word> cover) {
  auto tree = build_testing_tree(spec, suite);
  auto matrix = compute_apartness(tree);
  std::vector<std::string> problems;
  std::vector<NodeId> nodes;
  std::vector<bool> member(tree.size(), false);
  for (const auto& w : cover) {
    auto q = tree.find(w);
    if (!q) {
      problems.push_back("cover word '" + format_word(w, spec.inputs()) +
                         "' is not a node of the testing tree");
      continue;
    }
    if (member[*q]) continue;
    member[*q] = true;
    nodes.push_back(*q);
  }
  if (!member[tree.root()]) {
    problems.push_back("basis does not contain the root");
    nodes.insert(nodes.begin(), tree.root());
    member[tree.root()] = true;
  }
  for (NodeId q : nodes)
    if (q != tree.root() && !member[tree.parent(q)])
      problems.push_back("basis is not ancestor-closed at " + show(tree, q));
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (!matrix.apart(nodes[a], nodes[b]))
        problems.push_back("basis nodes " + show(tree, nodes[a]) + " and " +
                           show(tree, nodes[b]) + " are not apart");
  auto strat = stratify(tree, nodes, matrix);
  return {std::move(tree), std::move(matrix), std::move(strat), std::move(problems)};
}

std::vector<std::pair<NodeId, NodeId>> check_condition1(const BasisStratification& strat,
                                                        const ApartnessMatrix& matrix,
                                                        std::size_t k) {
  const auto fk = strat.frontier(k);
  const auto below = strat.frontier_below(k);
  std::vector<std::vector<std::pair<NodeId, NodeId>>> found(fk.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(fk.size()); ++x) {
    const NodeId q = fk[x];
    for (NodeId r : below)
      if (!(strat.candidates[q] == strat.candidates[r]) && !matrix.apart(q, r))
        found[x].emplace_back(q, r);
  }
  std::vector<std::pair<NodeId, NodeId>> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Condition2Violation> check_condition2(const BasisStratification& strat,
                                                  const ApartnessMatrix& matrix, std::size_t k) {
  std::vector<Condition2Violation> out;
  const auto below = strat.frontier_below(k);
  for (NodeId q : strat.frontier(k))
    for (NodeId r : below) {
      if (matrix.apart(q, r)) continue;
      for (NodeId s : strat.basis)
        if (matrix.apart(s, q) && !matrix.apart(s, r)) out.push_back({q, r, s});
    }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> check_condition3(const ObservationTree& tree,
                                                        const BasisStratification& strat,
                                                        const ApartnessMatrix& matrix,
                                                        std::size_t k) {
  std::vector<std::pair<NodeId, NodeId>> out;
  auto inside = [&](NodeId q) {
    return strat.level[q] >= 0 && static_cast<std::size_t>(strat.level[q]) <= k;
  };
  for (std::size_t j = 0; j <= k && j < strat.strata.size(); ++j)
    for (NodeId r : strat.strata[j])
      for (NodeId q = tree.parent(r); q != kNoNode && inside(q); q = tree.parent(q))
        if (!(strat.candidates[q] == strat.candidates[r]) && !matrix.apart(q, r))
          out.emplace_back(q, r);
  std::sort(out.begin(), out.end());
  return out;
}

void check_preconditions(const MealyMachine& spec, const TestSuite& suite,
                         std::span<const Word> cover) {
  if (!is_complete(spec)) throw Error(ErrorKind::NotComplete, "specification is not complete");
  if (!is_initially_connected(spec))
    throw Error(ErrorKind::NotInitiallyConnected, "specification is not initially connected");
  if (!is_minimal(spec)) throw Error(ErrorKind::NotMinimal, "specification is not minimal");
  validate_minimal_cover(spec, cover);
  for (const auto& t : suite.maximal())
    if (!reach(spec, t))
      throw Error(ErrorKind::TestUndefinedOnSpec,
                  "test '" + format_word(t, spec.inputs()) + "' is undefined on the spec");
}

CompletenessReport check(CheckMode mode, const MealyMachine& spec, const TestSuite& suite,
                         std::span<const Word> cover, std::size_t k) {
  check_preconditions(spec, suite, cover);
  auto a = analyze_suite(spec, suite, cover);
  const auto& tree = a.tree;
  const auto& strat = a.strat;

  CompletenessReport r;
  r.mode = mode;
  r.k = k;
  r.inputs = spec.inputs();
  r.cover.assign(cover.begin(), cover.end());
  r.spec_states = spec.num_states();
  r.basis_size = strat.basis.size();
  r.tree_nodes = tree.size();
  r.maximal_tests = suite.maximal().size();
  r.reasons = a.basis_problems;
  r.basis_ok = a.basis_problems.empty() && r.basis_size == r.spec_states;
  if (a.basis_problems.empty() && r.basis_size != r.spec_states)
    r.reasons.push_back("basis has " + std::to_string(r.basis_size) + " nodes but the spec has " +
                        std::to_string(r.spec_states) + " states");

  auto gaps = strata_completeness(tree, strat, k);
  r.basis_complete = gaps.basis_complete();
  for (const auto& g : gaps.basis)
    r.reasons.push_back("basis node " + show(tree, g.node) + " is incomplete");
  for (std::size_t j = 0; j < k; ++j) {
    r.frontier_complete.push_back(gaps.frontier_complete(j));
    for (const auto& g : gaps.frontier[j])
      r.reasons.push_back("F^" + std::to_string(j) + " node " + show(tree, g.node) +
                          " is incomplete");
  }

  std::vector<NodeId> must_identify;
  if (mode == CheckMode::KA) {
    auto fk = strat.frontier(k);
    must_identify.assign(fk.begin(), fk.end());
  } else {
    for (std::size_t j = 0; j <= k; ++j) {
      auto f = strat.frontier(j);
      must_identify.insert(must_identify.end(), f.begin(), f.end());
    }
  }
  for (NodeId q : must_identify)
    if (!strat.identified(q)) {
      r.unidentified.push_back(ref(tree, q));
      r.reasons.push_back("node " + show(tree, q) + " is not identified, C = " +
                          show_set(strat, tree, q));
    }

  if (mode == CheckMode::KA) {
    for (auto [q, s] : check_condition1(strat, a.matrix, k)) {
      r.condition1_violations.push_back({ref(tree, q), ref(tree, s)});
      r.reasons.push_back("condition (1) fails for " + show(tree, q) + " and " + show(tree, s) +
                          ": C = " + show_set(strat, tree, q) + " vs " +
                          show_set(strat, tree, s) + " and not apart");
    }
  } else {
    for (auto [q, s] : check_condition3(tree, strat, a.matrix, k)) {
      r.condition3_violations.push_back({ref(tree, q), ref(tree, s)});
      r.reasons.push_back("condition (3) fails for " + show(tree, q) + " →+ " + show(tree, s) +
                          ": C = " + show_set(strat, tree, q) + " vs " +
                          show_set(strat, tree, s) + " and not apart");
    }
  }

  r.verdict = r.reasons.empty() ? Verdict::Accepted : Verdict::Rejected;
  return r;
}

CompletenessReport check_kA(const MealyMachine& spec, const TestSuite& suite,
                            std::span<const Word> cover, std::size_t k) {
  return check(CheckMode::KA, spec, suite, cover, k);
}

CompletenessReport check_m(const MealyMachine& spec, const TestSuite& suite,
                           std::span<const Word> cover, std::size_t k) {
  return check(CheckMode::M, spec, suite, cover, k);
}

TestSuite prune_suite(const MealyMachine& spec, const TestSuite& suite,
                      std::span<const Word> cover, std::size_t k, CheckMode mode) {
  if (!check(mode, spec, suite, cover, k).accepted())
    throw Error(ErrorKind::InitialSuiteRejected, "the input suite is not accepted by the checker");
  TestSuite current = suite.normalized();
  auto accepts = [&](const TestSuite& t) { return check(mode, spec, t, cover, k).accepted(); };
  bool changed = true;
  while (changed) {
    changed = false;
    const auto tests = current.maximal();
    for (auto it = tests.rbegin(); it != tests.rend(); ++it) {
      if (it->empty() || !current.contains(*it)) continue;
      TestSuite removed = current;
      removed.remove(*it);
      if (accepts(removed)) {
        current = std::move(removed);
        changed = true;
        continue;
      }
      TestSuite shortened = removed;
      shortened.add(Word(it->begin(), it->end() - 1));
      shortened = shortened.normalized();
      if (accepts(shortened)) {
        current = std::move(shortened);
        changed = true;
      }
    }
  }
  return current;
}

}  // namespace kac
