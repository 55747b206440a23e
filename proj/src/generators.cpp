#include "kac/generators.hpp"

#include <algorithm>
#include <set>

#include "kac/error.hpp"

namespace kac {

namespace {

void require_generatable(const MealyMachine& spec, std::span<const Word> cover,
                         const SeparatingFamily& identifiers) {
  if (!is_complete(spec)) throw Error(ErrorKind::NotComplete, "specification is not complete");
  if (!is_minimal(spec)) throw Error(ErrorKind::NotMinimal, "specification is not minimal");
  validate_minimal_cover(spec, cover);
  if (identifiers.identifiers.size() != spec.num_states())
    throw Error(ErrorKind::InvalidArgument, "identifier family does not match the spec");
}

// A·I^{≤bound}, in cover order then length-lexicographic.
std::vector<Word> extend(std::span<const Word> cover, std::size_t inputs, std::size_t bound) {
  std::vector<Word> out;
  const auto middles = words_up_to(inputs, bound);
  for (const auto& a : cover)
    for (const auto& m : middles) out.push_back(concat(a, m));
  return out;
}

}  // namespace

std::vector<Word> concat_identified(std::span<const Word> prefixes, const MealyMachine& spec,
                                    const SeparatingFamily& identifiers) {
  std::set<Word> out;
  for (const auto& p : prefixes) {
    auto q = reach(spec, p);
    if (!q)
      throw Error(ErrorKind::PrefixUndefined,
                  "prefix '" + format_word(p, spec.inputs()) + "' is undefined on the spec");
    for (const auto& w : identifiers.of(*q)) out.insert(concat(p, w));
  }
  return {out.begin(), out.end()};
}

TestSuite wp_union(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                   const SeparatingFamily& identifiers) {
  TestSuite suite;
  const auto outer = extend(cover, spec.num_inputs(), k + 1);
  for (const auto& w : outer) suite.add(w);
  const auto flat = identifiers.flatten();
  for (const auto& p : extend(cover, spec.num_inputs(), k))
    for (const auto& w : flat) suite.add(concat(p, w));
  for (auto& w : concat_identified(outer, spec, identifiers)) suite.add(std::move(w));
  return suite;
}

TestSuite hsi_union(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                    const SeparatingFamily& identifiers) {
  TestSuite suite;
  const auto outer = extend(cover, spec.num_inputs(), k + 1);
  for (const auto& w : outer) suite.add(w);
  for (auto& w : concat_identified(outer, spec, identifiers)) suite.add(std::move(w));
  return suite;
}

TestSuite generate_wp(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                      const SeparatingFamily& identifiers) {
  require_generatable(spec, cover, identifiers);
  return wp_union(spec, cover, k, identifiers).normalized();
}

TestSuite generate_hsi(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                       const SeparatingFamily& harmonized) {
  require_generatable(spec, cover, harmonized);
  if (auto defect = harmonization_defect(spec, harmonized))
    throw Error(ErrorKind::NotHarmonized,
                "identifiers of '" + spec.state_name(defect->first) + "' and '" +
                    spec.state_name(defect->second) + "' share no separating sequence");
  return hsi_union(spec, cover, k, harmonized).normalized();
}

TestSuite generate_w(const MealyMachine& spec, std::span<const Word> cover, std::size_t k,
                     const SeparatingFamily& identifiers) {
  SeparatingFamily uniform;
  uniform.identifiers.assign(spec.num_states(), identifiers.flatten());
  return generate_wp(spec, cover, k, uniform);
}

TestSuite generate_w(const MealyMachine& spec, std::span<const Word> cover, std::size_t k) {
  return generate_w(spec, cover, k, default_identifiers(spec, Method::W));
}

SeparatingFamily default_identifiers(const MealyMachine& spec, Method) {
  return separating_family(spec, true);
}

TestSuite generate(const MealyMachine& spec, const GenConfig& config) {
  switch (config.method) {
    case Method::Wp: return generate_wp(spec, config.cover, config.k, config.identifiers);
    case Method::Hsi: return generate_hsi(spec, config.cover, config.k, config.identifiers);
    case Method::W: return generate_w(spec, config.cover, config.k, config.identifiers);
  }
  return {};
}

}  // namespace kac
