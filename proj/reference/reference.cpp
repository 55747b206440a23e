#include "reference.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace kac::ref {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

// Every node in the subtree of q, paired with its path from q.
void collect(const ObservationTree& tree, NodeId q, Word& path,
             std::vector<std::pair<NodeId, Word>>& out) {
  for (auto c : tree.children(q)) {
    path.push_back(tree.input(c));
    out.emplace_back(c, path);
    collect(tree, c, path, out);
    path.pop_back();
  }
}

bool apart_by_definition(const ObservationTree& tree, NodeId q, NodeId r) {
  std::vector<std::pair<NodeId, Word>> below;
  Word path;
  collect(tree, q, path, below);
  for (const auto& [node, word] : below)
    if (separates(tree, q, r, word)) return true;
  return false;
}

}  // namespace

bool separates(const ObservationTree& tree, NodeId q, NodeId r, std::span<const Symbol> word) {
  auto a = tree.run_outputs(q, word);
  auto b = tree.run_outputs(r, word);
  return a && b && *a != *b;
}

std::vector<std::uint8_t> naive_apartness(const ObservationTree& tree) {
  const auto n = tree.size();
  std::vector<std::uint8_t> out(n * n, 0);
  for (NodeId q = 0; q < n; ++q)
    for (NodeId r = 0; r < n; ++r) out[q * n + r] = apart_by_definition(tree, q, r);
  return out;
}

std::vector<std::uint8_t> naive_apartness_omp(const ObservationTree& tree) {
  const auto n = tree.size();
  std::vector<std::uint8_t> out(n * n, 0);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t q = 0; q < rows; ++q)
    for (NodeId r = 0; r < n; ++r)
      out[std::size_t(q) * n + r] = apart_by_definition(tree, static_cast<NodeId>(q), r);
  return out;
}

Eccentricity naive_eccentricity(const MealyMachine& m, std::span<const StateId> sources) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(m.num_states(), inf);
  for (auto s : sources) {
    std::vector<std::size_t> dist(m.num_states(), inf);
    std::deque<StateId> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      auto q = queue.front();
      queue.pop_front();
      for (Symbol i = 0; i < m.num_inputs(); ++i)
        if (auto t = m.transition(q, i); t && dist[t->target] == inf) {
          dist[t->target] = dist[q] + 1;
          queue.push_back(t->target);
        }
    }
    for (std::size_t q = 0; q < best.size(); ++q) best[q] = std::min(best[q], dist[q]);
  }
  std::size_t worst = 0;
  for (auto d : best) {
    if (d == inf) return Eccentricity::unreachable();
    worst = std::max(worst, d);
  }
  return Eccentricity::finite(worst);
}

std::optional<Word> brute_separating_sequence(const MealyMachine& m, StateId q, StateId r,
                                              std::size_t max_len) {
  for (const auto& w : words_up_to(m.num_inputs(), max_len)) {
    auto a = run(m, q, w);
    auto b = run(m, r, w);
    if (a && b && a->outputs != b->outputs) return w;
  }
  return std::nullopt;
}

bool brute_equivalent(const MealyMachine& m1, const MealyMachine& m2) {
  const auto len = m1.num_states() + m2.num_states() - 1;
  for (const auto& w : words_of_length(m1.num_inputs(), len)) {
    auto a = run(m1, m1.initial(), w);
    auto b = run(m2, m2.initial(), w);
    if (a.has_value() != b.has_value()) return false;
    if (!a) continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (m1.outputs().name(a->outputs[j]) != m2.outputs().name(b->outputs[j])) return false;
  }
  return true;
}

std::vector<std::pair<NodeId, NodeId>> condition1_serial(const BasisStratification& strat,
                                                         const ApartnessMatrix& matrix,
                                                         std::size_t k) {
  std::vector<std::pair<NodeId, NodeId>> out;
  const auto lower = strat.frontier_below(k);
  for (auto q : strat.frontier(k))
    for (auto r : lower)
      if (strat.candidates[q] != strat.candidates[r] && !matrix.apart(q, r)) out.emplace_back(q, r);
  std::sort(out.begin(), out.end());
  return out;
}

MutationSweep mutation_sweep_serial(const MealyMachine& spec, const TestSuite& suite,
                                    std::span<const Word> cover, std::size_t k,
                                    std::uint64_t base_seed, std::uint64_t count,
                                    const SamplerConfig& config) {
  const auto domain = FaultDomain::uka(k, {cover.begin(), cover.end()});
  MutationSweep out;
  out.samples = count;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto seed = derive_seed(base_seed, i);
    const auto mutant = sample_mutant(spec, cover, k, seed, config);
    const auto o = evaluate_mutant(spec, suite, mutant.machine, domain);
    if (!o.member) ++out.non_members;
    if (!o.complete) ++out.incomplete;
    if (!o.passed) ++out.killed;
    else if (o.equivalent) ++out.equivalent;
    else out.violating_seeds.push_back(seed);
  }
  std::sort(out.violating_seeds.begin(), out.violating_seeds.end());
  return out;
}

EnumerationSweep enumeration_sweep_serial(const MealyMachine& spec, const TestSuite& suite,
                                          std::span<const Word> cover, std::size_t k,
                                          std::size_t max_states, std::uint64_t budget) {
  MachineEnumerator machines(spec.inputs(), spec.outputs(), max_states, budget);
  const auto uka = FaultDomain::uka(k, {cover.begin(), cover.end()});
  const auto ua = FaultDomain::ua({cover.begin(), cover.end()});
  EnumerationSweep out;
  out.machines = machines.count();
  MealyMachine m;
  for (std::uint64_t idx = 0; machines.next(m); ++idx) {
    const auto o = classify_enumerated(spec, suite, uka, ua, m);
    if (!o.connected) continue;
    ++out.connected;
    if (o.in_uka) ++out.in_uka;
    if (o.in_ua) ++out.in_ua;
    if (o.passed) ++out.passing;
    if (o.passed && !o.equivalent) out.violations.push_back(idx);
    if (!o.in_uka && !o.in_ua) out.outside_domain.push_back(idx);
  }
  return out;
}

Alphabet letters(std::size_t n, char first) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>(first + i));
  return Alphabet(std::move(names));
}

Alphabet digits(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return Alphabet(std::move(names));
}

MealyMachine random_machine(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                            std::size_t outputs) {
  for (;;) {
    MealyMachine m(letters(inputs), digits(outputs));
    for (std::size_t q = 0; q < states; ++q) m.add_state("s" + std::to_string(q));
    m.set_initial(0);
    // A random spanning tree first, so every state is reachable.
    for (std::size_t q = 1; q < states; ++q) {
      for (int tries = 0; tries < 64; ++tries) {
        const auto from = static_cast<StateId>(pick(rng, q));
        const auto i = static_cast<Symbol>(pick(rng, inputs));
        if (m.defined(from, i)) continue;
        m.define(from, i, static_cast<StateId>(q), static_cast<Symbol>(pick(rng, outputs)));
        break;
      }
    }
    for (StateId q = 0; q < states; ++q)
      for (Symbol i = 0; i < inputs; ++i)
        if (!m.defined(q, i))
          m.define(q, i, static_cast<StateId>(pick(rng, states)),
                   static_cast<Symbol>(pick(rng, outputs)));
    if (is_initially_connected(m)) return m;
  }
}

MealyMachine random_minimal_machine(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                                    std::size_t outputs) {
  for (;;) {
    auto m = random_machine(rng, states, inputs, outputs);
    if (is_minimal(m)) return m;
  }
}

MealyMachine random_partial_machine(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                                    std::size_t outputs, double gap) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  MealyMachine m(letters(inputs), digits(outputs));
  for (std::size_t q = 0; q < states; ++q) m.add_state("s" + std::to_string(q));
  m.set_initial(0);
  for (StateId q = 0; q < states; ++q)
    for (Symbol i = 0; i < inputs; ++i)
      if (coin(rng) >= gap)
        m.define(q, i, static_cast<StateId>(pick(rng, states)),
                 static_cast<Symbol>(pick(rng, outputs)));
  return m;
}

ObservationTree random_tree(std::mt19937_64& rng, std::size_t max_nodes, std::size_t inputs,
                            std::size_t outputs) {
  ObservationTree tree(letters(inputs), digits(outputs));
  const auto target = 1 + pick(rng, max_nodes);
  while (tree.size() < target) {
    const auto q = static_cast<NodeId>(pick(rng, tree.size()));
    if (tree.is_complete(q)) continue;
    const auto i = static_cast<Symbol>(pick(rng, inputs));
    if (tree.child(q, i) != kNoNode) continue;
    tree.add_child(q, i, static_cast<Symbol>(pick(rng, outputs)));
  }
  return tree;
}

TestSuite random_suite(std::mt19937_64& rng, std::size_t inputs, std::size_t tests,
                       std::size_t max_len) {
  TestSuite suite;
  for (std::size_t t = 0; t < tests; ++t) {
    Word w(1 + pick(rng, max_len));
    for (auto& s : w) s = static_cast<Symbol>(pick(rng, inputs));
    suite.add(std::move(w));
  }
  return suite;
}

}  // namespace kac::ref
