#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kac/test_suite.hpp"
#include "kac/word.hpp"

namespace kac {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

struct Transition {
  StateId target;
  Symbol output;
  bool operator==(const Transition&) const = default;
};

/// Deterministic, possibly partial Mealy machine. The input alphabet order
/// drives every tie-break (covers, BFS, generated suites).
class MealyMachine {
 public:
  MealyMachine() = default;
  MealyMachine(Alphabet inputs, Alphabet outputs);

  StateId add_state(const std::string& name);
  void set_initial(StateId q);

  /// Defines a transition; throws InvalidArgument if one already exists.
  void define(StateId from, Symbol input, StateId to, Symbol output);
  /// Overwrites (or creates) a transition.
  void redefine(StateId from, Symbol input, StateId to, Symbol output);
  void undefine(StateId from, Symbol input);

  std::optional<Transition> transition(StateId q, Symbol i) const {
    const auto& t = table_[index(q, i)];
    if (t.target == kNoState) return std::nullopt;
    return t;
  }
  bool defined(StateId q, Symbol i) const { return table_[index(q, i)].target != kNoState; }

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_inputs() const { return inputs_.size(); }
  StateId initial() const { return initial_; }
  const Alphabet& inputs() const { return inputs_; }
  const Alphabet& outputs() const { return outputs_; }
  Alphabet& outputs() { return outputs_; }
  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  std::optional<StateId> find_state(const std::string& name) const;
  bool valid_state(StateId q) const { return q < num_states(); }

  bool operator==(const MealyMachine& other) const;

 private:
  std::size_t index(StateId q, Symbol i) const { return std::size_t(q) * inputs_.size() + i; }

  Alphabet inputs_;
  Alphabet outputs_;
  std::vector<std::string> state_names_;
  std::unordered_map<std::string, StateId> state_index_;
  StateId initial_ = 0;
  std::vector<Transition> table_;
};

struct RunResult {
  StateId state;
  Word outputs;
  bool operator==(const RunResult&) const = default;
};

/// Lifted transition/output functions. Absent if any step is undefined.
std::optional<RunResult> run(const MealyMachine& m, StateId from, std::span<const Symbol> word);
/// The state reached from the initial state, if defined.
std::optional<StateId> reach(const MealyMachine& m, std::span<const Symbol> word);

bool is_complete(const MealyMachine& m);
bool is_initially_connected(const MealyMachine& m);

/// Restriction to the states reachable from the initial state.
MealyMachine reachable_part(const MealyMachine& m);

struct StateCover {
  std::vector<Word> words;
  std::vector<StateId> reached;  // reached[i] = state reached by words[i]
};

/// Canonical minimal cover: BFS from the initial state, inputs in order.
/// Throws NotInitiallyConnected.
StateCover minimal_state_cover(const MealyMachine& m);

/// Throws CoverNotMinimal unless `words` is prefix-closed and reaches every
/// state exactly once.
StateCover validate_minimal_cover(const MealyMachine& m, std::span<const Word> words);

/// Shortest word on which the two states behave differently, either through
/// an output mismatch or through one side being undefined.
std::optional<Word> distinguishing_word(const MealyMachine& m1, StateId q,
                                        const MealyMachine& m2, StateId r);

struct EquivalenceVerdict {
  std::optional<Word> counterexample;
  bool equivalent() const { return !counterexample.has_value(); }
};

/// Requires equal input alphabets (AlphabetMismatch otherwise).
EquivalenceVerdict equivalent(const MealyMachine& m1, const MealyMachine& m2);
bool state_equivalent(const MealyMachine& m1, StateId q, const MealyMachine& m2, StateId r);

/// Block index per state of the coarsest behavioural equivalence.
std::vector<std::uint32_t> equivalence_classes(const MealyMachine& m);
bool is_minimal(const MealyMachine& m);

/// Shortest word defined from both states with differing outputs.
std::optional<Word> separating_sequence(const MealyMachine& m, StateId q, StateId r);

/// Per-state identifier sets. identifiers[q] is sorted and duplicate free.
struct SeparatingFamily {
  std::vector<std::vector<Word>> identifiers;

  const std::vector<Word>& of(StateId q) const { return identifiers.at(q); }
  /// The union of all identifier sets (a characterization set).
  std::vector<Word> flatten() const;
};

/// Splitting-tree construction. With harmonized=true every inequivalent
/// pair shares a separator; otherwise each W_q is greedily pruned to a
/// subset that still separates q from every other state.
/// Throws NotComplete / NotMinimal.
SeparatingFamily separating_family(const MealyMachine& m, bool harmonized);

bool is_state_identifier_family(const MealyMachine& m, const SeparatingFamily& family);
/// First pair (q, r) whose common identifiers do not separate them.
std::optional<std::pair<StateId, StateId>> harmonization_defect(const MealyMachine& m,
                                                                const SeparatingFamily& family);

/// Graph eccentricity of a vertex set, with an explicit unreachable value
/// that compares greater than every distance.
class Eccentricity {
 public:
  static Eccentricity finite(std::size_t d) { return Eccentricity(d); }
  static Eccentricity unreachable() { return Eccentricity(); }

  bool is_unreachable() const { return !value_; }
  std::size_t value() const { return value_.value(); }

  std::strong_ordering operator<=>(const Eccentricity& o) const {
    if (value_ && o.value_) return *value_ <=> *o.value_;
    return o.value_.has_value() <=> value_.has_value();
  }
  bool operator==(const Eccentricity&) const = default;

  std::string to_string() const { return value_ ? std::to_string(*value_) : "unreachable"; }

 private:
  Eccentricity() = default;
  explicit Eccentricity(std::size_t d) : value_(d) {}
  std::optional<std::size_t> value_;
};

/// max over states of the distance from the nearest source: one BFS with
/// all sources contracted into the start layer. Throws EmptySourceSet.
Eccentricity eccentricity(const MealyMachine& m, std::span<const StateId> sources);

struct PassVerdict {
  bool passed = true;
  Word failing_test;
  std::vector<std::string> spec_outputs;
  std::vector<std::string> impl_outputs;  // shorter than the test if impl got stuck
};

/// Executes the maximal tests of `suite` in order; the first mismatch is
/// reported. Throws TestUndefinedOnSpec.
PassVerdict passes(const MealyMachine& impl, const MealyMachine& spec, const TestSuite& suite);

/// Maps each output of `from` to the output of `to` with the same name, or
/// to a value no output of `to` takes.
std::vector<Symbol> output_translation(const Alphabet& from, const Alphabet& to);

}  // namespace kac
