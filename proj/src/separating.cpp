#include <algorithm>
#include <map>
#include <set>

#include "kac/error.hpp"
#include "kac/mealy.hpp"

namespace kac {

namespace {

// Node of the splitting tree. Children partition `states` by the output
// word each state produces on `separator`.
struct SplitNode {
  std::vector<StateId> states;
  Word separator;
  std::vector<std::size_t> children;
  std::size_t parent = SIZE_MAX;
  std::size_t depth = 0;
};

class SplittingTree {
 public:
  explicit SplittingTree(const MealyMachine& m) : m_(m), leaf_(m.num_states(), 0) {
    SplitNode root;
    for (StateId q = 0; q < m.num_states(); ++q) root.states.push_back(q);
    nodes_.push_back(std::move(root));
    refine();
  }

  std::vector<Word> path_separators(StateId q) const {
    std::vector<Word> out;
    for (std::size_t v = nodes_[leaf_[q]].parent; v != SIZE_MAX; v = nodes_[v].parent)
      out.push_back(nodes_[v].separator);
    return out;  // deepest first
  }

 private:
  Word outputs_on(StateId q, const Word& w) const { return run(m_, q, w)->outputs; }

  std::size_t lca(std::size_t a, std::size_t b) const {
    while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
    while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
    while (a != b) {
      a = nodes_[a].parent;
      b = nodes_[b].parent;
    }
    return a;
  }

  std::optional<Word> find_separator(const SplitNode& leaf) const {
    for (Symbol i = 0; i < m_.num_inputs(); ++i) {
      const Symbol first = m_.transition(leaf.states[0], i)->output;
      for (StateId q : leaf.states)
        if (m_.transition(q, i)->output != first) return Word{i};
    }
    std::optional<Word> best;
    for (Symbol i = 0; i < m_.num_inputs(); ++i) {
      std::size_t meet = leaf_[m_.transition(leaf.states[0], i)->target];
      bool split = false;
      for (StateId q : leaf.states) {
        std::size_t l = leaf_[m_.transition(q, i)->target];
        if (l != meet) split = true;
        meet = lca(meet, l);
      }
      if (!split) continue;
      Word candidate = concat(Word{i}, nodes_[meet].separator);
      if (!best || candidate.size() < best->size()) best = std::move(candidate);
    }
    return best;
  }

  void split(std::size_t v, Word separator) {
    std::map<Word, std::vector<StateId>> classes;
    for (StateId q : nodes_[v].states) classes[outputs_on(q, separator)].push_back(q);
    nodes_[v].separator = std::move(separator);
    for (auto& [out, states] : classes) {
      SplitNode child;
      child.states = std::move(states);
      child.parent = v;
      child.depth = nodes_[v].depth + 1;
      const std::size_t id = nodes_.size();
      for (StateId q : child.states) leaf_[q] = id;
      nodes_[v].children.push_back(id);
      nodes_.push_back(std::move(child));
    }
  }

  void refine() {
    while (true) {
      std::vector<std::size_t> open;
      for (std::size_t v = 0; v < nodes_.size(); ++v)
        if (nodes_[v].children.empty() && nodes_[v].states.size() > 1) open.push_back(v);
      if (open.empty()) return;
      bool progress = false;
      for (std::size_t v : open) {
        if (auto sep = find_separator(nodes_[v])) {
          split(v, std::move(*sep));
          progress = true;
        }
      }
      if (!progress) throw Error(ErrorKind::NotMinimal, "machine has equivalent states");
    }
  }

  const MealyMachine& m_;
  std::vector<SplitNode> nodes_;
  std::vector<std::size_t> leaf_;
};

bool separates(const MealyMachine& m, StateId q, StateId r, const Word& w) {
  auto a = run(m, q, w);
  auto b = run(m, r, w);
  return a && b && a->outputs != b->outputs;
}

bool separates_all(const MealyMachine& m, StateId q, const std::vector<Word>& words) {
  for (StateId r = 0; r < m.num_states(); ++r) {
    if (r == q) continue;
    if (std::none_of(words.begin(), words.end(),
                     [&](const Word& w) { return separates(m, q, r, w); }))
      return false;
  }
  return true;
}

void sort_unique(std::vector<Word>& words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

}  // namespace

std::vector<Word> SeparatingFamily::flatten() const {
  std::vector<Word> all;
  for (const auto& w : identifiers) all.insert(all.end(), w.begin(), w.end());
  sort_unique(all);
  return all;
}

SeparatingFamily separating_family(const MealyMachine& m, bool harmonized) {
  if (!is_complete(m)) throw Error(ErrorKind::NotComplete, "machine is not complete");
  if (!is_minimal(m)) throw Error(ErrorKind::NotMinimal, "machine is not minimal");
  SplittingTree tree(m);
  SeparatingFamily family;
  family.identifiers.resize(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) {
    auto words = tree.path_separators(q);
    if (!harmonized) {
      for (std::size_t i = 0; i < words.size();) {
        auto trial = words;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (separates_all(m, q, trial))
          words = std::move(trial);
        else
          ++i;
      }
    }
    sort_unique(words);
    family.identifiers[q] = std::move(words);
  }
  return family;
}

bool is_state_identifier_family(const MealyMachine& m, const SeparatingFamily& family) {
  if (family.identifiers.size() != m.num_states()) return false;
  for (StateId q = 0; q < m.num_states(); ++q)
    for (StateId r = 0; r < m.num_states(); ++r) {
      if (q == r || state_equivalent(m, q, m, r)) continue;
      const auto& wq = family.of(q);
      if (std::none_of(wq.begin(), wq.end(),
                       [&](const Word& w) { return separates(m, q, r, w); }))
        return false;
    }
  return true;
}

std::optional<std::pair<StateId, StateId>> harmonization_defect(const MealyMachine& m,
                                                                const SeparatingFamily& family) {
  if (family.identifiers.size() != m.num_states())
    throw Error(ErrorKind::InvalidArgument, "family size does not match the machine");
  for (StateId q = 0; q < m.num_states(); ++q)
    for (StateId r = q + 1; r < m.num_states(); ++r) {
      if (state_equivalent(m, q, m, r)) continue;
      const auto& wr = family.of(r);
      bool ok = false;
      for (const auto& w : family.of(q))
        if (std::find(wr.begin(), wr.end(), w) != wr.end() && separates(m, q, r, w)) {
          ok = true;
          break;
        }
      if (!ok) return std::pair{q, r};
    }
  return std::nullopt;
}

}  // namespace kac
