#include "kac/fault_domains.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <random>
#include <set>

#include <omp.h>

#include "kac/error.hpp"

namespace kac {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

std::vector<Word> dedup(std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

std::vector<StateId> reached_by(const MealyMachine& m, std::span<const Word> cover) {
  std::vector<StateId> out;
  for (const auto& w : cover) {
    auto q = reach(m, w);
    if (!q)
      throw Error(ErrorKind::CoverWordUndefined,
                  "cover word '" + format_word(w, m.inputs()) + "' is undefined on the machine");
    out.push_back(*q);
  }
  return out;
}

// Uniform in [0, n). Plain modulo keeps replays identical across standard
// libraries; the bias is irrelevant at these ranges.
std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Every state carries the spec state it stands in for (its shadow) and its
// distance layer from the cover-reached states. Grafted states copy the
// behaviour of their shadow, so a machine built from grafts alone is still
// equivalent to the spec; flips and redirects then inject the faults.
class Mutator {
 public:
  Mutator(const MealyMachine& spec, std::span<const Word> cover, std::mt19937_64& rng)
      : spec_(spec), m_(spec), rng_(rng) {
    for (StateId q = 0; q < spec.num_states(); ++q) {
      shadow_.push_back(q);
      layer_.push_back(0);
    }
    for (const auto& w : cover)
      if (!w.empty()) tree_edges_.insert({*reach(spec, Word(w.begin(), w.end() - 1)), w.back()});
  }

  MealyMachine& machine() { return m_; }
  std::vector<Edit>& edits() { return edits_; }

  bool flip() {
    if (m_.outputs().size() < 2 || m_.num_states() == 0) return false;
    const auto q = static_cast<StateId>(pick(rng_, m_.num_states()));
    const auto i = static_cast<Symbol>(pick(rng_, m_.num_inputs()));
    const auto t = *m_.transition(q, i);
    auto o = static_cast<Symbol>(pick(rng_, m_.outputs().size() - 1));
    if (o >= t.output) ++o;
    m_.redefine(q, i, t.target, o);
    record(EditKind::OutputFlip, q, i, "output " + m_.outputs().name(t.output) + " -> " +
                                           m_.outputs().name(o));
    return true;
  }

  bool redirect() {
    if (m_.num_states() < 2) return false;
    const auto q = static_cast<StateId>(pick(rng_, m_.num_states()));
    const auto i = static_cast<Symbol>(pick(rng_, m_.num_inputs()));
    const auto t = *m_.transition(q, i);
    auto target = static_cast<StateId>(pick(rng_, m_.num_states() - 1));
    if (target >= t.target) ++target;
    m_.redefine(q, i, target, t.output);
    record(EditKind::TargetRedirect, q, i,
           "target " + m_.state_name(t.target) + " -> " + m_.state_name(target));
    return true;
  }

  // Redirects a transition (p, i) with p at layer < k into a fresh state
  // shadowing δ^S(shadow(p), i). The fresh state's transitions go to random
  // states with the right shadow and carry the spec outputs.
  bool graft(std::size_t k) {
    std::vector<std::pair<StateId, Symbol>> open;
    for (StateId p = 0; p < m_.num_states(); ++p) {
      if (layer_[p] >= k) continue;
      for (Symbol i = 0; i < m_.num_inputs(); ++i)
        if (!tree_edges_.count({p, i}) && layer_[m_.transition(p, i)->target] == 0)
          open.emplace_back(p, i);
    }
    if (open.empty()) return false;
    const auto [p, i] = open[pick(rng_, open.size())];
    const auto copy = spec_.transition(shadow_[p], i)->target;
    const auto f = m_.add_state(fresh_name());
    shadow_.push_back(copy);
    layer_.push_back(layer_[p] + 1);
    for (Symbol x = 0; x < m_.num_inputs(); ++x) {
      const auto t = *spec_.transition(copy, x);
      std::vector<StateId> same;
      for (StateId q = 0; q < m_.num_states(); ++q)
        if (shadow_[q] == t.target) same.push_back(q);
      m_.define(f, x, same[pick(rng_, same.size())], t.output);
    }
    m_.redefine(p, i, f, m_.transition(p, i)->output);
    record(EditKind::ChainExtension, p, i,
           "fresh state " + m_.state_name(f) + " copying " + spec_.state_name(copy));
    return true;
  }

  /// E edits: grafts are applied first, then the faults.
  void random_edits(std::size_t count, std::size_t k) {
    std::vector<EditKind> kinds;
    if (m_.outputs().size() >= 2) kinds.push_back(EditKind::OutputFlip);
    if (m_.num_states() >= 2) kinds.push_back(EditKind::TargetRedirect);
    if (k > 0) kinds.push_back(EditKind::ChainExtension);
    if (kinds.empty()) return;
    std::vector<EditKind> drawn;
    for (std::size_t e = 0; e < count; ++e) drawn.push_back(kinds[pick(rng_, kinds.size())]);
    std::stable_partition(drawn.begin(), drawn.end(),
                          [](EditKind e) { return e == EditKind::ChainExtension; });
    for (auto e : drawn) {
      switch (e) {
        case EditKind::OutputFlip: flip(); break;
        case EditKind::TargetRedirect: redirect(); break;
        case EditKind::ChainExtension: graft(k); break;
      }
    }
  }

 private:
  std::string fresh_name() {
    for (;;) {
      auto name = "n" + std::to_string(fresh_++);
      if (!m_.find_state(name)) return name;
    }
  }

  void record(EditKind kind, StateId q, Symbol i, std::string what) {
    edits_.push_back({kind, "(" + m_.state_name(q) + ", " + m_.inputs().name(i) + "): " + what});
  }

  const MealyMachine& spec_;
  MealyMachine m_;
  std::mt19937_64& rng_;
  std::vector<StateId> shadow_;
  std::vector<std::size_t> layer_;
  std::set<std::pair<StateId, Symbol>> tree_edges_;
  std::vector<Edit> edits_;
  std::size_t fresh_ = 1;
};

std::size_t edit_count(std::mt19937_64& rng, const SamplerConfig& config) {
  if (config.max_edits <= config.min_edits) return config.max_edits;
  return config.min_edits + pick(rng, config.max_edits - config.min_edits + 1);
}

void require_sampleable(const MealyMachine& spec, std::span<const Word> cover) {
  if (!is_complete(spec)) throw Error(ErrorKind::NotComplete, "specification is not complete");
  validate_minimal_cover(spec, cover);
}

}  // namespace

FaultDomain FaultDomain::um(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "U_m requires m >= 1");
  FaultDomain d;
  d.kind_ = Kind::Um;
  d.m_ = m;
  return d;
}

FaultDomain FaultDomain::uka(std::size_t k, std::vector<Word> cover) {
  if (cover.empty()) throw Error(ErrorKind::InvalidArgument, "U_k^A requires a non-empty A");
  FaultDomain d;
  d.kind_ = Kind::UkA;
  d.k_ = k;
  d.cover_ = dedup(std::move(cover));
  return d;
}

FaultDomain FaultDomain::ua(std::vector<Word> cover) {
  if (cover.empty()) throw Error(ErrorKind::InvalidArgument, "U^A requires a non-empty A");
  FaultDomain d;
  d.kind_ = Kind::UA;
  d.cover_ = dedup(std::move(cover));
  return d;
}

FaultDomain FaultDomain::union_of(std::vector<FaultDomain> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "empty union of fault domains");
  FaultDomain d;
  d.kind_ = Kind::Union;
  d.parts_ = std::move(parts);
  return d;
}

std::string FaultDomain::describe(const Alphabet& inputs) const {
  auto words = [&] {
    std::string s = "{";
    for (std::size_t i = 0; i < cover_.size(); ++i)
      s += (i ? ", " : "") + format_word(cover_[i], inputs);
    return s + "}";
  };
  switch (kind_) {
    case Kind::Um: return "U_" + std::to_string(m_);
    case Kind::UkA: return "U_" + std::to_string(k_) + "^A, A = " + words();
    case Kind::UA: return "U^A, A = " + words();
    case Kind::Union: {
      std::string s;
      for (std::size_t i = 0; i < parts_.size(); ++i)
        s += (i ? " + " : "") + parts_[i].describe(inputs);
      return s;
    }
  }
  return {};
}

bool member(const MealyMachine& m, const FaultDomain& domain) {
  switch (domain.kind()) {
    case FaultDomain::Kind::Um: return m.num_states() <= domain.m();
    case FaultDomain::Kind::UkA: {
      const auto sources = reached_by(m, domain.cover());
      return eccentricity(m, sources) <= Eccentricity::finite(domain.k());
    }
    case FaultDomain::Kind::UA: {
      const auto reached = reached_by(m, domain.cover());
      const auto classes = equivalence_classes(m);
      std::set<std::uint32_t> seen;
      for (auto q : reached)
        if (!seen.insert(classes[q]).second) return true;
      return false;
    }
    case FaultDomain::Kind::Union:
      return std::any_of(domain.parts().begin(), domain.parts().end(),
                         [&](const FaultDomain& d) { return member(m, d); });
  }
  return false;
}

std::uint64_t bound_states(std::uint64_t n, std::uint64_t l, std::uint64_t k) {
  if (n == 0 || l == 0) throw Error(ErrorKind::InvalidArgument, "bound requires n >= 1 and l >= 1");
  if (k == 0) return n;
  std::uint64_t geometric = 0;
  std::uint64_t power = 1;
  for (std::uint64_t j = 0; j < k; ++j) {
    geometric = sat_add(geometric, power);
    power = sat_mul(power, l);
  }
  const auto extra = sat_mul(geometric, sat_add(sat_mul(n, l) - n, 1));
  const auto total = sat_add(n, extra);
  if (total == kSaturated) throw Error(ErrorKind::InvalidArgument, "state bound overflows 64 bits");
  return total;
}

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::OutputFlip: return "output-flip";
    case EditKind::TargetRedirect: return "target-redirect";
    case EditKind::ChainExtension: return "chain-extension";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i) {
  // splitmix64 over base + i
  std::uint64_t z = base + (i + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

MutantRecord sample_mutant(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                           std::uint64_t seed, const SamplerConfig& config) {
  require_sampleable(spec, cover);
  const auto domain = FaultDomain::uka(k, {cover.begin(), cover.end()});
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
    Mutator mut(spec, cover, rng);
    mut.random_edits(edit_count(rng, config), k);
    auto machine = reachable_part(mut.machine());
    if (member(machine, domain)) return {std::move(machine), std::move(mut.edits()), seed, attempt};
  }
  throw Error(ErrorKind::BudgetExhausted, "no U_k^A member after " +
                                              std::to_string(config.max_attempts) + " attempts");
}

MutantRecord sample_ua_mutant(const MealyMachine& spec, std::span<const Word> cover,
                              std::uint64_t seed, const SamplerConfig& config) {
  require_sampleable(spec, cover);
  if (cover.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "U^A is empty for a single cover word");
  const auto domain = FaultDomain::ua({cover.begin(), cover.end()});
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
    std::vector<std::size_t> nonempty;
    for (std::size_t j = 0; j < cover.size(); ++j)
      if (!cover[j].empty()) nonempty.push_back(j);
    const auto& rho = cover[nonempty[pick(rng, nonempty.size())]];
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < cover.size(); ++j)
      if (cover[j] != rho && cover[j].size() <= rho.size()) others.push_back(j);
    const auto& sigma = cover[others[pick(rng, others.size())]];

    Mutator mut(spec, cover, rng);
    auto& m = mut.machine();
    const Word pi(rho.begin(), rho.end() - 1);
    const auto from = *reach(m, pi);
    const auto target = *reach(m, sigma);
    const auto t = *m.transition(from, rho.back());
    m.redefine(from, rho.back(), target, t.output);
    mut.edits().push_back({EditKind::TargetRedirect,
                           "'" + format_word(rho, m.inputs()) + "' now reaches the state of '" +
                               format_word(sigma, m.inputs()) + "'"});
    const auto extra = config.max_edits > 1 ? pick(rng, config.max_edits) : 0;
    for (std::size_t e = 0; e < extra; ++e) {
      if (pick(rng, 2) == 0) mut.flip();
      else mut.redirect();
    }
    auto machine = reachable_part(m);
    if (member(machine, domain)) return {std::move(machine), std::move(mut.edits()), seed, attempt};
  }
  throw Error(ErrorKind::BudgetExhausted, "no U^A member after " +
                                              std::to_string(config.max_attempts) + " attempts");
}

std::uint64_t enumeration_count(std::size_t inputs, std::size_t outputs, std::size_t max_states) {
  std::uint64_t total = 0;
  for (std::size_t s = 1; s <= max_states; ++s)
    total = sat_add(total, sat_pow(std::uint64_t(s) * outputs, std::uint64_t(s) * inputs));
  return total;
}

MachineEnumerator::MachineEnumerator(Alphabet inputs, Alphabet outputs, std::size_t max_states,
                                     std::uint64_t budget)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      max_states_(max_states),
      count_(enumeration_count(inputs_.size(), outputs_.size(), max_states)) {
  if (inputs_.empty() || outputs_.empty() || max_states == 0)
    throw Error(ErrorKind::InvalidArgument, "enumeration needs inputs, outputs and states");
  if (count_ > budget)
    throw Error(ErrorKind::BudgetExceeded,
                (count_ == kSaturated ? std::string("more than 2^64")
                                      : std::to_string(count_)) +
                    " machines exceed the budget of " + std::to_string(budget));
}

MealyMachine MachineEnumerator::at(std::uint64_t index) const {
  if (index >= count_) throw Error(ErrorKind::InvalidArgument, "enumeration index out of range");
  std::size_t s = 1;
  for (;; ++s) {
    const auto block = sat_pow(std::uint64_t(s) * outputs_.size(), std::uint64_t(s) * inputs_.size());
    if (index < block) break;
    index -= block;
  }
  MealyMachine m(inputs_, outputs_);
  for (std::size_t q = 0; q < s; ++q) m.add_state("s" + std::to_string(q));
  m.set_initial(0);
  const std::uint64_t radix = std::uint64_t(s) * outputs_.size();
  // The first transition is the most significant digit.
  for (std::size_t t = s * inputs_.size(); t-- > 0;) {
    const auto digit = index % radix;
    index /= radix;
    m.define(static_cast<StateId>(t / inputs_.size()), static_cast<Symbol>(t % inputs_.size()),
             static_cast<StateId>(digit / outputs_.size()),
             static_cast<Symbol>(digit % outputs_.size()));
  }
  return m;
}

bool MachineEnumerator::next(MealyMachine& out) {
  if (cursor_ >= count_) return false;
  out = at(cursor_++);
  return true;
}

namespace {

class CandidateSource {
 public:
  CandidateSource(const MealyMachine& spec, const FaultDomain& domain, std::uint64_t seed,
                  const SamplerConfig& config)
      : spec_(spec), domain_(domain), seed_(seed), config_(config) {
    if (domain.kind() == FaultDomain::Kind::Um)
      enumerator_.emplace(spec.inputs(), spec.outputs(), domain.m(), kSaturated);
    for (const auto& part : domain.parts())
      parts_.emplace_back(spec, part, derive_seed(seed, parts_.size()), config);
    if (domain.kind() == FaultDomain::Kind::UkA || domain.kind() == FaultDomain::Kind::UA)
      require_sampleable(spec, domain.cover());
  }

  std::optional<MutantRecord> at(std::uint64_t i) const {
    switch (domain_.kind()) {
      case FaultDomain::Kind::Um:
        if (i >= enumerator_->count()) return std::nullopt;
        return MutantRecord{enumerator_->at(i), {}, i, 0};
      case FaultDomain::Kind::UkA:
        return sample_mutant(spec_, domain_.cover(), domain_.k(), derive_seed(seed_, i), config_);
      case FaultDomain::Kind::UA:
        return sample_ua_mutant(spec_, domain_.cover(), derive_seed(seed_, i), config_);
      case FaultDomain::Kind::Union: {
        // Round robin; exhausted parts are skipped.
        const auto p = parts_.size();
        return parts_[i % p].at(i / p);
      }
    }
    return std::nullopt;
  }

  bool exhausted(std::uint64_t i) const {
    switch (domain_.kind()) {
      case FaultDomain::Kind::Um: return i >= enumerator_->count();
      case FaultDomain::Kind::Union:
        return std::all_of(parts_.begin(), parts_.end(), [&](const CandidateSource& part) {
          return part.exhausted(i / parts_.size());
        });
      default: return false;
    }
  }

 private:
  const MealyMachine& spec_;
  const FaultDomain& domain_;
  std::uint64_t seed_;
  SamplerConfig config_;
  std::optional<MachineEnumerator> enumerator_;
  std::vector<CandidateSource> parts_;
};

}  // namespace

std::optional<Counterexample> search_counterexample(const MealyMachine& spec,
                                                    const TestSuite& suite,
                                                    const FaultDomain& domain,
                                                    std::uint64_t budget, std::uint64_t seed,
                                                    const SamplerConfig& config) {
  for (const auto& t : suite.maximal())
    if (!run(spec, spec.initial(), t))
      throw Error(ErrorKind::TestUndefinedOnSpec,
                  "test '" + format_word(t, spec.inputs()) + "' is undefined on the spec");
  const CandidateSource source(spec, domain, seed, config);

  const std::uint64_t chunk = 256 * static_cast<std::uint64_t>(omp_get_max_threads());
  for (std::uint64_t base = 0; base < budget && !source.exhausted(base); base += chunk) {
    const auto end = std::min(budget, base + chunk);
    std::uint64_t best = kSaturated;
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
    for (std::uint64_t i = base; i < end; ++i) {
      try {
        auto cand = source.at(i);
        if (cand && passes(cand->machine, spec, suite).passed &&
            !equivalent(spec, cand->machine).equivalent())
          best = std::min(best, i);
      } catch (...) {
#pragma omp critical(kac_search_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    if (best != kSaturated) {
      auto cand = *source.at(best);
      const auto verdict = equivalent(spec, cand.machine);
      if (!passes(cand.machine, spec, suite).passed || verdict.equivalent())
        throw Error(ErrorKind::InvalidArgument, "search replay diverged");
      return Counterexample{std::move(cand), *verdict.counterexample, best};
    }
  }
  return std::nullopt;
}

}  // namespace kac
