#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kac/apartness.hpp"
#include "kac/checker.hpp"
#include "kac/error.hpp"
#include "kac/fault_domains.hpp"
#include "kac/generators.hpp"
#include "kac/io.hpp"
#include "kac/report.hpp"
#include "kac/reproduce.hpp"

namespace {

using namespace kac;
using nlohmann::json;

constexpr int kExitError = 2;

enum class Format { Text, Structured };

struct Options {
  Format format = Format::Text;

  std::string spec, suite, impl, machine, cover, identifiers;
  std::string method = "wp";
  std::string mode = "kA";
  std::size_t k = 0;
  std::vector<std::string> words;
  std::vector<std::string> states;
  bool candidates = false;

  std::string domain;
  std::uint64_t budget = 100'000;
  std::optional<std::uint64_t> seed;
  std::size_t min_edits = SamplerConfig{}.min_edits;
  std::size_t max_edits = SamplerConfig{}.max_edits;

  std::uint64_t n = 0, l = 0, bound_k = 0;
  std::string example;
};

MealyMachine load_machine(const std::string& path) {
  try {
    return parse_machine(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

TestSuite load_suite(const std::string& path, const Alphabet& inputs) {
  try {
    return parse_suite(read_file(path), inputs);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::vector<Word> load_words(const std::string& path, const Alphabet& inputs) {
  try {
    return parse_word_list(read_file(path), inputs);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::vector<Word> cover_or_default(const Options& o, const MealyMachine& spec) {
  if (!o.cover.empty()) return load_words(o.cover, spec.inputs());
  return minimal_state_cover(spec).words;
}

CheckMode parse_mode(const std::string& s) { return s == "m" ? CheckMode::M : CheckMode::KA; }

void emit(const Options& o, const json& doc, const std::string& text) {
  if (o.format == Format::Structured)
    std::cout << doc.dump(2) << '\n';
  else
    std::cout << text;
}

std::vector<std::string> word_strings(const std::vector<Word>& ws, const Alphabet& in) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(format_word(w, in));
  return out;
}

int cmd_generate(const Options& o) {
  const auto spec = load_machine(o.spec);
  GenConfig config;
  config.method = o.method == "hsi" ? Method::Hsi : o.method == "w" ? Method::W : Method::Wp;
  config.k = o.k;
  config.cover = cover_or_default(o, spec);
  config.identifiers = o.identifiers.empty()
                           ? default_identifiers(spec, config.method)
                           : parse_identifiers(read_file(o.identifiers), spec);
  const auto suite = generate(spec, config);
  json doc{{"method", o.method},
           {"k", o.k},
           {"cover", word_strings(config.cover, spec.inputs())},
           {"tests", word_strings(suite.maximal(), spec.inputs())},
           {"total_length", suite.total_length()}};
  emit(o, doc, serialize_suite(suite, spec.inputs()));
  return 0;
}

int cmd_check(const Options& o) {
  const auto spec = load_machine(o.spec);
  const auto suite = load_suite(o.suite, spec.inputs());
  const auto cover = cover_or_default(o, spec);
  const auto report = check(parse_mode(o.mode), spec, suite, cover, o.k);
  std::cout << (o.format == Format::Structured ? render_structured(report) : render_text(report));
  return report.accepted() ? 0 : 1;
}

int cmd_verify_pass(const Options& o) {
  const auto impl = load_machine(o.impl);
  const auto spec = load_machine(o.spec);
  const auto suite = load_suite(o.suite, spec.inputs());
  const auto v = passes(impl, spec, suite);
  json doc{{"passed", v.passed}};
  std::string text = v.passed ? "PASS\n" : "FAIL\n";
  if (!v.passed) {
    const auto test = format_word(v.failing_test, spec.inputs());
    auto join = [](const std::vector<std::string>& xs) {
      std::string s;
      for (const auto& x : xs) s += (s.empty() ? "" : " ") + x;
      return s;
    };
    doc["failing_test"] = test;
    doc["spec_outputs"] = v.spec_outputs;
    doc["impl_outputs"] = v.impl_outputs;
    text += "test:           " + test + "\nspec outputs:   " + join(v.spec_outputs) +
            "\nimpl outputs:   " + join(v.impl_outputs) + '\n';
  }
  emit(o, doc, text);
  return v.passed ? 0 : 1;
}

int cmd_apart(const Options& o) {
  const auto spec = load_machine(o.spec);
  const auto suite = load_suite(o.suite, spec.inputs());
  const auto& in = spec.inputs();
  const auto tree = build_testing_tree(spec, suite);
  const auto matrix = compute_apartness(tree);
  json doc{{"tree_nodes", tree.size()}, {"apart_pairs", matrix.count_apart_pairs()}};
  std::string text = "tree nodes: " + std::to_string(tree.size()) +
                     ", apart pairs: " + std::to_string(matrix.count_apart_pairs()) + '\n';
  int code = 0;

  if (!o.words.empty()) {
    if (o.words.size() != 2)
      throw Error(ErrorKind::InvalidArgument, "--word must be given exactly twice");
    std::vector<NodeId> nodes;
    for (const auto& w : o.words) {
      auto node = tree.find(parse_word(w, in));
      if (!node) throw Error(ErrorKind::InvalidArgument, "'" + w + "' is not a node of the tree");
      nodes.push_back(*node);
    }
    const bool apart = matrix.apart(nodes[0], nodes[1]);
    const auto a = format_word(tree.access(nodes[0]), in);
    const auto b = format_word(tree.access(nodes[1]), in);
    doc["pair"] = {a, b};
    doc["apart"] = apart;
    if (apart) {
      const auto w = format_word(witness(matrix, tree, nodes[0], nodes[1]), in);
      doc["witness"] = w;
      text += a + " # " + b + ", witness " + w + '\n';
    } else {
      text += a + " and " + b + " are not apart\n";
      code = 1;
    }
  }

  if (o.candidates) {
    const auto cover = cover_or_default(o, spec);
    const auto strat = basis_from_cover(tree, cover, matrix);
    doc["candidates"] = json::array();
    for (NodeId q = 0; q < tree.size(); ++q) {
      std::vector<std::string> c;
      for (auto b : strat.candidate_nodes(q)) c.push_back(std::to_string(b));
      std::string line = "  " + std::to_string(q) + " [" + format_word(tree.access(q), in) + "] ";
      if (strat.in_basis(q)) {
        line += "basis";
      } else {
        line += "F^" + std::to_string(strat.level[q]) + " C = {";
        for (std::size_t i = 0; i < c.size(); ++i) line += (i ? ", " : "") + c[i];
        line += "}";
      }
      text += line + '\n';
      doc["candidates"].push_back({{"node", q},
                                   {"access", format_word(tree.access(q), in)},
                                   {"level", strat.level[q]},
                                   {"candidates", c}});
    }
  }
  emit(o, doc, text);
  return code;
}

int cmd_eccentricity(const Options& o) {
  const auto m = load_machine(o.machine);
  std::vector<StateId> sources;
  for (const auto& name : o.states) {
    auto q = m.find_state(name);
    if (!q) throw Error(ErrorKind::InvalidArgument, "no state named '" + name + "'");
    sources.push_back(*q);
  }
  if (!o.cover.empty())
    for (const auto& w : load_words(o.cover, m.inputs())) {
      auto q = reach(m, w);
      if (!q)
        throw Error(ErrorKind::CoverWordUndefined,
                    "cover word '" + format_word(w, m.inputs()) + "' is undefined");
      sources.push_back(*q);
    }
  if (o.states.empty() && o.cover.empty()) sources.push_back(m.initial());
  const auto e = eccentricity(m, sources);
  json doc{{"eccentricity", e.is_unreachable() ? json("unreachable") : json(e.value())}};
  emit(o, doc, e.to_string() + '\n');
  return 0;
}

FaultDomain parse_domain(const std::string& text, const Alphabet& inputs) {
  std::vector<FaultDomain> parts;
  std::size_t start = 0;
  for (;;) {
    const auto end = text.find('+', start);
    const auto part = text.substr(start, end == std::string::npos ? end : end - start);
    const auto colon = part.find(':');
    const auto kind = part.substr(0, colon);
    const auto rest = colon == std::string::npos ? std::string() : part.substr(colon + 1);
    auto nat = [&](const std::string& s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "bad number '" + s + "' in domain '" + part + "'");
      return static_cast<std::size_t>(std::stoull(s));
    };
    if (kind == "um") {
      parts.push_back(FaultDomain::um(nat(rest)));
    } else if (kind == "uka") {
      const auto c2 = rest.find(':');
      if (c2 == std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "expected uka:<k>:<cover file>");
      parts.push_back(FaultDomain::uka(nat(rest.substr(0, c2)),
                                       load_words(rest.substr(c2 + 1), inputs)));
    } else if (kind == "ua") {
      if (rest.empty()) throw Error(ErrorKind::InvalidArgument, "expected ua:<cover file>");
      parts.push_back(FaultDomain::ua(load_words(rest, inputs)));
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown fault domain '" + part + "'");
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts.size() == 1 ? parts.front() : FaultDomain::union_of(std::move(parts));
}

int cmd_member(const Options& o) {
  const auto m = load_machine(o.machine);
  const auto domain = parse_domain(o.domain, m.inputs());
  const bool in = member(m, domain);
  const auto name = domain.describe(m.inputs());
  emit(o, json{{"domain", name}, {"member", in}},
       (in ? "member of " : "not a member of ") + name + '\n');
  return in ? 0 : 1;
}

int cmd_search(const Options& o) {
  const auto spec = load_machine(o.spec);
  const auto suite = load_suite(o.suite, spec.inputs());
  const auto domain = parse_domain(o.domain, spec.inputs());
  SamplerConfig config;
  config.min_edits = o.min_edits;
  config.max_edits = o.max_edits;
  const auto seed = o.seed.value_or(0);
  const auto hit = search_counterexample(spec, suite, domain, o.budget, seed, config);
  const auto& in = spec.inputs();
  json doc{{"domain", domain.describe(in)}, {"seed", seed}, {"budget", o.budget},
           {"found", hit.has_value()}};
  std::string text;
  if (!hit) {
    text = "no counterexample within " + std::to_string(o.budget) + " candidates (" +
           domain.describe(in) + ", seed " + std::to_string(seed) + ")\n";
  } else {
    const auto& mut = hit->mutant;
    doc["index"] = hit->index;
    doc["sample_seed"] = mut.seed;
    doc["distinguishing"] = format_word(hit->distinguishing, in);
    doc["machine"] = serialize_machine(mut.machine);
    doc["edits"] = json::array();
    for (const auto& e : mut.edits)
      doc["edits"].push_back({{"kind", std::string(to_string(e.kind))}, {"where", e.description}});
    text = "counterexample at candidate " + std::to_string(hit->index) + " (sample seed " +
           std::to_string(mut.seed) + ")\ndistinguishing word: " +
           format_word(hit->distinguishing, in) + "\nedits:\n";
    for (const auto& e : mut.edits)
      text += "  " + std::string(to_string(e.kind)) + " " + e.description + '\n';
    text += serialize_machine(mut.machine);
  }
  emit(o, doc, text);
  return hit ? 1 : 0;
}

int cmd_bound(const Options& o) {
  const auto b = bound_states(o.n, o.l, o.bound_k);
  emit(o, json{{"n", o.n}, {"l", o.l}, {"k", o.bound_k}, {"bound", b}}, std::to_string(b) + '\n');
  return 0;
}

int cmd_prune(const Options& o) {
  const auto spec = load_machine(o.spec);
  const auto suite = load_suite(o.suite, spec.inputs());
  const auto cover = cover_or_default(o, spec);
  const auto pruned = prune_suite(spec, suite, cover, o.k, parse_mode(o.mode));
  json doc{{"tests", word_strings(pruned.maximal(), spec.inputs())},
           {"total_length_before", suite.total_length()},
           {"total_length_after", pruned.total_length()}};
  emit(o, doc, serialize_suite(pruned, spec.inputs()));
  return 0;
}

int cmd_reproduce(const Options& o) {
  const auto report = reproduce(o.example);
  std::cout << (o.format == Format::Structured ? render_structured(report) : render_text(report));
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-A-completeness checking and generation of test suites for Mealy machines", "kac"};
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, Format> formats{{"text", Format::Text},
                                              {"structured", Format::Structured}};
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "text or structured (JSON)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto cover_opt = [&](CLI::App* cmd) {
    cmd->add_option("--cover", o.cover, "state cover file (default: canonical minimal cover)")
        ->check(CLI::ExistingFile);
  };
  auto mode_opt = [&](CLI::App* cmd) {
    cmd->add_option("--mode", o.mode, "kA (k-A-completeness) or m (m = |Q| + k)")
        ->check(CLI::IsMember({"kA", "m"}));
  };

  auto* generate = app.add_subcommand("generate", "generate a Wp, HSI or W suite");
  generate->add_option("--method", o.method)->check(CLI::IsMember({"wp", "hsi", "w"}));
  generate->add_option("--k", o.k)->required();
  cover_opt(generate);
  generate->add_option("--identifiers", o.identifiers, "identifier file")->check(CLI::ExistingFile);
  generate->add_option("spec", o.spec)->required();
  common(generate);

  auto* check = app.add_subcommand("check", "check a sufficient completeness condition");
  check->add_option("--k", o.k)->required();
  mode_opt(check);
  cover_opt(check);
  check->add_option("spec", o.spec)->required();
  check->add_option("suite", o.suite)->required();
  common(check);

  auto* verify = app.add_subcommand("verify-pass", "run a suite on an implementation");
  verify->add_option("impl", o.impl)->required();
  verify->add_option("spec", o.spec)->required();
  verify->add_option("suite", o.suite)->required();
  common(verify);

  auto* apart = app.add_subcommand("apart", "apartness on the testing tree of a suite");
  apart->add_option("--word", o.words, "node given by its access word; use twice");
  apart->add_flag("--candidates", o.candidates, "print the stratification and candidate sets");
  cover_opt(apart);
  apart->add_option("spec", o.spec)->required();
  apart->add_option("suite", o.suite)->required();
  common(apart);

  auto* ecc = app.add_subcommand("eccentricity", "eccentricity of a set of states");
  ecc->add_option("--state", o.states, "source state (repeatable)");
  cover_opt(ecc);
  ecc->add_option("machine", o.machine)->required();
  common(ecc);

  auto* mem = app.add_subcommand("member", "fault domain membership");
  mem->add_option("--domain", o.domain, "um:<m> | uka:<k>:<cover> | ua:<cover>, joined by +")
      ->required();
  mem->add_option("machine", o.machine)->required();
  common(mem);

  auto* search = app.add_subcommand("search", "look for a passing, inequivalent machine");
  search->add_option("--domain", o.domain)->required();
  search->add_option("--budget", o.budget, "candidates to examine");
  search->add_option("--seed", o.seed, "64-bit seed (required when CI is set)");
  search->add_option("--min-edits", o.min_edits);
  search->add_option("--max-edits", o.max_edits);
  search->add_option("spec", o.spec)->required();
  search->add_option("suite", o.suite)->required();
  common(search);

  auto* bound = app.add_subcommand("bound", "largest state count in U_k^A");
  bound->add_option("--n", o.n, "|A|")->required()->check(CLI::PositiveNumber);
  bound->add_option("--l", o.l, "|I|")->required()->check(CLI::PositiveNumber);
  bound->add_option("--k", o.bound_k)->required();
  common(bound);

  auto* prune = app.add_subcommand("prune", "shorten tests while the checker still accepts");
  prune->add_option("--k", o.k)->required();
  mode_opt(prune);
  cover_opt(prune);
  prune->add_option("spec", o.spec)->required();
  prune->add_option("suite", o.suite)->required();
  common(prune);

  auto* repro = app.add_subcommand("reproduce", "replay a bundled example");
  std::vector<std::string> examples;
  for (auto e : reproducible_examples()) examples.emplace_back(e);
  repro->add_option("example", o.example)->required()->check(CLI::IsMember(examples));
  common(repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*search && !o.seed && std::getenv("CI"))
      throw Error(ErrorKind::InvalidArgument, "--seed is required when CI is set");
    if (*generate) return cmd_generate(o);
    if (*check) return cmd_check(o);
    if (*verify) return cmd_verify_pass(o);
    if (*apart) return cmd_apart(o);
    if (*ecc) return cmd_eccentricity(o);
    if (*mem) return cmd_member(o);
    if (*search) return cmd_search(o);
    if (*bound) return cmd_bound(o);
    if (*prune) return cmd_prune(o);
    if (*repro) return cmd_reproduce(o);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
