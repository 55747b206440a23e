#include "kac/mealy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "kac/error.hpp"

namespace kac {

MealyMachine::MealyMachine(Alphabet inputs, Alphabet outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {}

StateId MealyMachine::add_state(const std::string& name) {
  if (name.empty()) throw Error(ErrorKind::InvalidArgument, "empty state name");
  auto [it, inserted] = state_index_.emplace(name, static_cast<StateId>(state_names_.size()));
  if (!inserted) throw Error(ErrorKind::InvalidArgument, "duplicate state '" + name + "'");
  state_names_.push_back(name);
  table_.resize(table_.size() + inputs_.size(), Transition{kNoState, 0});
  return it->second;
}

void MealyMachine::set_initial(StateId q) {
  if (!valid_state(q)) throw Error(ErrorKind::InvalidArgument, "initial state out of range");
  initial_ = q;
}

void MealyMachine::define(StateId from, Symbol input, StateId to, Symbol output) {
  if (defined(from, input))
    throw Error(ErrorKind::InvalidArgument, "duplicate transition for state '" +
                                                state_name(from) + "' on input '" +
                                                inputs_.name(input) + "'");
  redefine(from, input, to, output);
}

void MealyMachine::redefine(StateId from, Symbol input, StateId to, Symbol output) {
  if (!valid_state(from) || !valid_state(to) || input >= inputs_.size() ||
      output >= outputs_.size())
    throw Error(ErrorKind::InvalidArgument, "transition out of range");
  table_[index(from, input)] = Transition{to, output};
}

void MealyMachine::undefine(StateId from, Symbol input) {
  table_[index(from, input)] = Transition{kNoState, 0};
}

std::optional<StateId> MealyMachine::find_state(const std::string& name) const {
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

bool MealyMachine::operator==(const MealyMachine& other) const {
  return inputs_ == other.inputs_ && outputs_ == other.outputs_ &&
         state_names_ == other.state_names_ && initial_ == other.initial_ &&
         table_ == other.table_;
}

std::optional<RunResult> run(const MealyMachine& m, StateId from, std::span<const Symbol> word) {
  RunResult result{from, {}};
  result.outputs.reserve(word.size());
  for (Symbol i : word) {
    auto t = m.transition(result.state, i);
    if (!t) return std::nullopt;
    result.state = t->target;
    result.outputs.push_back(t->output);
  }
  return result;
}

std::optional<StateId> reach(const MealyMachine& m, std::span<const Symbol> word) {
  StateId q = m.initial();
  for (Symbol i : word) {
    auto t = m.transition(q, i);
    if (!t) return std::nullopt;
    q = t->target;
  }
  return q;
}

bool is_complete(const MealyMachine& m) {
  for (StateId q = 0; q < m.num_states(); ++q)
    for (Symbol i = 0; i < m.num_inputs(); ++i)
      if (!m.defined(q, i)) return false;
  return true;
}

namespace {

std::vector<bool> reachable_states(const MealyMachine& m) {
  std::vector<bool> seen(m.num_states(), false);
  if (m.num_states() == 0) return seen;
  std::vector<StateId> stack{m.initial()};
  seen[m.initial()] = true;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (Symbol i = 0; i < m.num_inputs(); ++i)
      if (auto t = m.transition(q, i); t && !seen[t->target]) {
        seen[t->target] = true;
        stack.push_back(t->target);
      }
  }
  return seen;
}

}  // namespace

bool is_initially_connected(const MealyMachine& m) {
  auto seen = reachable_states(m);
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

MealyMachine reachable_part(const MealyMachine& m) {
  auto seen = reachable_states(m);
  std::vector<StateId> renumber(m.num_states(), kNoState);
  MealyMachine out(m.inputs(), m.outputs());
  for (StateId q = 0; q < m.num_states(); ++q)
    if (seen[q]) renumber[q] = out.add_state(m.state_name(q));
  out.set_initial(renumber[m.initial()]);
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (!seen[q]) continue;
    for (Symbol i = 0; i < m.num_inputs(); ++i)
      if (auto t = m.transition(q, i)) out.define(renumber[q], i, renumber[t->target], t->output);
  }
  return out;
}

StateCover minimal_state_cover(const MealyMachine& m) {
  StateCover cover;
  std::vector<std::optional<Word>> access(m.num_states());
  std::deque<StateId> queue{m.initial()};
  access[m.initial()] = Word{};
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    cover.words.push_back(*access[q]);
    cover.reached.push_back(q);
    for (Symbol i = 0; i < m.num_inputs(); ++i) {
      auto t = m.transition(q, i);
      if (!t || access[t->target]) continue;
      access[t->target] = append(*access[q], i);
      queue.push_back(t->target);
    }
  }
  if (cover.words.size() != m.num_states())
    throw Error(ErrorKind::NotInitiallyConnected, "machine is not initially connected");
  return cover;
}

StateCover validate_minimal_cover(const MealyMachine& m, std::span<const Word> words) {
  StateCover cover;
  std::set<Word> as_set(words.begin(), words.end());
  std::vector<bool> hit(m.num_states(), false);
  for (const auto& w : words) {
    auto q = reach(m, w);
    const std::string shown = format_word(w, m.inputs());
    if (!q) throw Error(ErrorKind::CoverNotMinimal, "cover word '" + shown + "' is undefined");
    if (!w.empty() && !as_set.count(Word(w.begin(), w.end() - 1)))
      throw Error(ErrorKind::CoverNotMinimal, "cover is not prefix-closed at '" + shown + "'");
    if (hit[*q])
      throw Error(ErrorKind::CoverNotMinimal,
                  "cover reaches state '" + m.state_name(*q) + "' twice");
    hit[*q] = true;
    cover.words.push_back(w);
    cover.reached.push_back(*q);
  }
  if (cover.words.size() != m.num_states())
    throw Error(ErrorKind::CoverNotMinimal, "cover does not reach every state");
  return cover;
}

std::vector<Symbol> output_translation(const Alphabet& from, const Alphabet& to) {
  std::vector<Symbol> map(from.size());
  Symbol fresh = static_cast<Symbol>(to.size());
  for (Symbol o = 0; o < from.size(); ++o) {
    auto hit = to.find(from.name(o));
    map[o] = hit ? *hit : fresh++;
  }
  return map;
}

namespace {

void require_same_inputs(const MealyMachine& a, const MealyMachine& b) {
  if (!(a.inputs() == b.inputs()))
    throw Error(ErrorKind::AlphabetMismatch, "machines have different input alphabets");
}

Word rebuild(const std::vector<std::pair<std::size_t, Symbol>>& parent, std::size_t node,
             std::size_t root) {
  Word w;
  while (node != root) {
    w.push_back(parent[node].second);
    node = parent[node].first;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

std::optional<Word> distinguishing_word(const MealyMachine& m1, StateId q,
                                        const MealyMachine& m2, StateId r) {
  require_same_inputs(m1, m2);
  const auto translate = output_translation(m2.outputs(), m1.outputs());
  const std::size_t n2 = m2.num_states();
  auto id = [n2](StateId a, StateId b) { return std::size_t(a) * n2 + b; };
  std::vector<std::pair<std::size_t, Symbol>> parent(m1.num_states() * n2, {SIZE_MAX, 0});
  const std::size_t root = id(q, r);
  parent[root] = {root, 0};
  std::deque<std::pair<StateId, StateId>> queue{{q, r}};
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (Symbol i = 0; i < m1.num_inputs(); ++i) {
      auto ta = m1.transition(a, i);
      auto tb = m2.transition(b, i);
      if (!ta && !tb) continue;
      if (!ta || !tb || ta->output != translate[tb->output])
        return append(rebuild(parent, id(a, b), root), i);
      const std::size_t next = id(ta->target, tb->target);
      if (parent[next].first != SIZE_MAX) continue;
      parent[next] = {id(a, b), i};
      queue.emplace_back(ta->target, tb->target);
    }
  }
  return std::nullopt;
}

EquivalenceVerdict equivalent(const MealyMachine& m1, const MealyMachine& m2) {
  return {distinguishing_word(m1, m1.initial(), m2, m2.initial())};
}

bool state_equivalent(const MealyMachine& m1, StateId q, const MealyMachine& m2, StateId r) {
  return !distinguishing_word(m1, q, m2, r).has_value();
}

std::vector<std::uint32_t> equivalence_classes(const MealyMachine& m) {
  const std::size_t n = m.num_states();
  std::vector<std::uint32_t> block(n, 0);
  std::size_t count = n ? 1 : 0;
  while (true) {
    std::map<std::vector<std::uint64_t>, std::uint32_t> signatures;
    std::vector<std::uint32_t> next(n);
    for (StateId q = 0; q < n; ++q) {
      std::vector<std::uint64_t> sig{block[q]};
      for (Symbol i = 0; i < m.num_inputs(); ++i) {
        auto t = m.transition(q, i);
        sig.push_back(t ? (std::uint64_t(t->output) << 32 | block[t->target]) : UINT64_MAX);
      }
      next[q] = signatures.emplace(std::move(sig), signatures.size()).first->second;
    }
    block = std::move(next);
    if (signatures.size() == count) break;
    count = signatures.size();
  }
  return block;
}

bool is_minimal(const MealyMachine& m) {
  auto block = equivalence_classes(m);
  std::set<std::uint32_t> distinct(block.begin(), block.end());
  return distinct.size() == m.num_states();
}

std::optional<Word> separating_sequence(const MealyMachine& m, StateId q, StateId r) {
  if (q == r) return std::nullopt;
  const std::size_t n = m.num_states();
  auto id = [n](StateId a, StateId b) { return std::size_t(a) * n + b; };
  std::vector<std::pair<std::size_t, Symbol>> parent(n * n, {SIZE_MAX, 0});
  const std::size_t root = id(q, r);
  parent[root] = {root, 0};
  std::deque<std::pair<StateId, StateId>> queue{{q, r}};
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (Symbol i = 0; i < m.num_inputs(); ++i) {
      auto ta = m.transition(a, i);
      auto tb = m.transition(b, i);
      if (!ta || !tb) continue;
      if (ta->output != tb->output) return append(rebuild(parent, id(a, b), root), i);
      if (ta->target == tb->target) continue;
      const std::size_t next = id(ta->target, tb->target);
      if (parent[next].first != SIZE_MAX) continue;
      parent[next] = {id(a, b), i};
      queue.emplace_back(ta->target, tb->target);
    }
  }
  return std::nullopt;
}

Eccentricity eccentricity(const MealyMachine& m, std::span<const StateId> sources) {
  if (sources.empty()) throw Error(ErrorKind::EmptySourceSet, "eccentricity needs a source");
  std::vector<std::size_t> dist(m.num_states(), SIZE_MAX);
  std::deque<StateId> queue;
  for (StateId s : sources) {
    if (!m.valid_state(s)) throw Error(ErrorKind::InvalidArgument, "source out of range");
    if (dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  std::size_t reached = queue.size();
  std::size_t far = 0;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    far = std::max(far, dist[q]);
    for (Symbol i = 0; i < m.num_inputs(); ++i) {
      auto t = m.transition(q, i);
      if (!t || dist[t->target] != SIZE_MAX) continue;
      dist[t->target] = dist[q] + 1;
      ++reached;
      queue.push_back(t->target);
    }
  }
  if (reached != m.num_states()) return Eccentricity::unreachable();
  return Eccentricity::finite(far);
}

PassVerdict passes(const MealyMachine& impl, const MealyMachine& spec, const TestSuite& suite) {
  require_same_inputs(impl, spec);
  const auto translate = output_translation(impl.outputs(), spec.outputs());
  for (const auto& test : suite.maximal()) {
    auto expected = run(spec, spec.initial(), test);
    if (!expected)
      throw Error(ErrorKind::TestUndefinedOnSpec,
                  "test '" + format_word(test, spec.inputs()) + "' is undefined on the spec");
    StateId q = impl.initial();
    std::size_t step = 0;
    for (; step < test.size(); ++step) {
      auto t = impl.transition(q, test[step]);
      if (!t || translate[t->output] != expected->outputs[step]) break;
      q = t->target;
    }
    if (step == test.size()) continue;

    PassVerdict fail;
    fail.passed = false;
    fail.failing_test = test;
    for (Symbol o : expected->outputs) fail.spec_outputs.push_back(spec.outputs().name(o));
    q = impl.initial();
    for (Symbol i : test) {
      auto t = impl.transition(q, i);
      if (!t) break;
      fail.impl_outputs.push_back(impl.outputs().name(t->output));
      q = t->target;
    }
    return fail;
  }
  return {};
}

std::vector<Word> TestSuite::maximal() const {
  std::vector<Word> out;
  for (auto it = tests_.begin(); it != tests_.end(); ++it) {
    auto next = std::next(it);
    if (next != tests_.end() && is_prefix(*it, *next)) continue;
    out.push_back(*it);
  }
  return out;
}

std::size_t TestSuite::total_length() const {
  std::size_t total = 0;
  for (const auto& w : maximal()) total += w.size();
  return total;
}

}  // namespace kac
