#pragma once

#include <span>
#include <vector>

#include "kac/mealy.hpp"
#include "kac/test_suite.hpp"

namespace kac {

enum class Method { Wp, Hsi, W };

struct GenConfig {
  Method method = Method::Wp;
  std::size_t k = 0;
  std::vector<Word> cover;
  SeparatingFamily identifiers;
};

/// W ⊙ 𝒲 = { στ | σ ∈ W, τ ∈ W_{δ(q0,σ)} }, sorted. Throws PrefixUndefined.
std::vector<Word> concat_identified(std::span<const Word> prefixes, const MealyMachine& spec,
                                    const SeparatingFamily& identifiers);

/// A·I^{≤k+1} ∪ A·I^{≤k}·⋃𝒲 ∪ A·I^{≤k+1} ⊙ 𝒲, before normalization.
TestSuite wp_union(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                   const SeparatingFamily& identifiers);
/// A·I^{≤k+1} ∪ A·I^{≤k+1} ⊙ 𝒲, before normalization.
TestSuite hsi_union(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                    const SeparatingFamily& identifiers);

/// Wp-method suite, normalized to maximal tests.
/// Throws NotCompleteSpec, NotMinimalSpec, CoverNotMinimal.
TestSuite generate_wp(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                      const SeparatingFamily& identifiers);

/// HSI-method suite; additionally throws NotHarmonized.
TestSuite generate_hsi(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                       const SeparatingFamily& harmonized);

/// W-method: Wp with every identifier replaced by the flattened family.
TestSuite generate_w(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                     const SeparatingFamily& identifiers);
TestSuite generate_w(const MealyMachine& spec, std::span<const Word> cover, std::size_t k);

TestSuite generate(const MealyMachine& spec, const GenConfig& config);

/// Identifier family each method uses when the caller supplies none.
SeparatingFamily default_identifiers(const MealyMachine& spec, Method method);

}  // namespace kac
