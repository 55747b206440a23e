#include "kac/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "kac/checker.hpp"
#include "kac/error.hpp"
#include "kac/fault_domains.hpp"
#include "kac/fixtures.hpp"
#include "kac/generators.hpp"
#include "kac/io.hpp"

namespace kac {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string name) { report_.example = std::move(name); }

  void say(std::string line) { report_.narrative.push_back(std::move(line)); }
  void expect(std::string claim, bool ok, std::string observed = {}) {
    report_.checks.push_back({std::move(claim), ok, std::move(observed)});
  }
  template <typename T>
  void expect_eq(std::string claim, const T& got, const T& want, const std::string& shown) {
    expect(std::move(claim), got == want, shown);
  }

  ReproReport take() { return std::move(report_); }

 private:
  ReproReport report_;
};

std::string words(const std::vector<Word>& ws, const Alphabet& in) {
  std::string s = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + format_word(ws[i], in);
  return s + "}";
}

std::string outputs_on(const MealyMachine& m, const Word& w) {
  auto r = run(m, m.initial(), w);
  if (!r) return "(undefined)";
  std::string s;
  for (auto o : r->outputs) s += (s.empty() ? "" : " ") + m.outputs().name(o);
  return s;
}

// Impl passes the suite, is in U_1^A, and `word` tells it apart from spec.
void incompleteness_story(Recorder& rec, const MealyMachine& spec, const MealyMachine& impl,
                          const TestSuite& suite, const std::vector<Word>& cover,
                          const Word& word) {
  const auto& in = spec.inputs();
  rec.say("suite: " + words(suite.maximal(), in));
  rec.say("cover A = " + words(cover, in));

  const auto verdict = passes(impl, spec, suite);
  rec.expect("implementation passes the suite", verdict.passed,
             verdict.passed ? "pass" : "fails on " + format_word(verdict.failing_test, in));

  const bool in_domain = member(impl, FaultDomain::uka(1, cover));
  rec.expect("implementation is in U_1^A", in_domain, in_domain ? "member" : "not a member");

  const auto eq = equivalent(spec, impl);
  rec.expect("implementation is not equivalent to the spec", !eq.equivalent(),
             eq.equivalent() ? "equivalent" : "shortest counterexample " +
                                                  format_word(*eq.counterexample, in));

  const auto s_out = outputs_on(spec, word);
  const auto m_out = outputs_on(impl, word);
  rec.say("on " + format_word(word, in) + ": spec " + s_out + ", implementation " + m_out);
  rec.expect(format_word(word, in) + " distinguishes spec and implementation", s_out != m_out,
             "spec " + s_out + " / impl " + m_out);

  const auto report = check_kA(spec, suite, cover, 1);
  rec.expect("checker does not accept the suite as 1-A-complete", !report.accepted(),
             report.accepted() ? "accepted" : "unknown");
}

ReproReport spyh() {
  Recorder rec("spyh");
  const auto spec = fixture_machine("turnstile.fsm");
  const auto impl = fixture_machine("fig3-impl.fsm");
  const auto& in = spec.inputs();
  const auto suite = fixture_suite("spyh-suite.txt", in);
  const auto cover = fixture_words("spyh-cover.txt", in);
  incompleteness_story(rec, spec, impl, suite, cover, parse_word("c p c p", in));

  auto ecc = [&](std::vector<std::string> names) {
    std::vector<StateId> src;
    for (const auto& n : names) src.push_back(*impl.find_state(n));
    return eccentricity(impl, src);
  };
  const auto e1 = ecc({"L'"}), e2 = ecc({"U'"}), e12 = ecc({"L'", "U'"});
  rec.expect_eq("eccentricity of {L'} is 2", e1, Eccentricity::finite(2), e1.to_string());
  rec.expect_eq("eccentricity of {U'} is unreachable", e2, Eccentricity::unreachable(),
                e2.to_string());
  rec.expect_eq("eccentricity of {L', U'} is 1", e12, Eccentricity::finite(1), e12.to_string());

  const auto hit = search_counterexample(spec, suite, FaultDomain::uka(1, cover), 100'000, 0);
  if (hit)
    rec.say("search (seed 0) hit sample #" + std::to_string(hit->index) + " with " +
            std::to_string(hit->mutant.machine.num_states()) + " states, distinguished by " +
            format_word(hit->distinguishing, in));
  rec.expect("counterexample search in U_1^A finds a machine", hit.has_value(),
             hit ? format_word(hit->distinguishing, in) : "none within 100000 samples");
  return rec.take();
}

ReproReport spy() {
  Recorder rec("spy");
  const auto spec = fixture_machine("spy-spec.fsm");
  const auto impl = fixture_machine("spy-impl.fsm");
  const auto& in = spec.inputs();
  incompleteness_story(rec, spec, impl, fixture_suite("spy-suite.txt", in),
                       fixture_words("spy-cover.txt", in), parse_word("a a b", in));
  return rec.take();
}

ReproReport h() {
  Recorder rec("h");
  const auto spec = fixture_machine("h-spec.fsm");
  const auto impl = fixture_machine("h-impl.fsm");
  const auto& in = spec.inputs();
  const auto suite = fixture_suite("h-suite.txt", in);
  const auto cover = fixture_words("h-cover.txt", in);
  incompleteness_story(rec, spec, impl, suite, cover, parse_word("c b c", in));

  const auto m = check_m(spec, suite, cover, 1);
  rec.expect("suite is accepted as m-complete for m = 3", m.accepted(),
             m.accepted() ? "accepted" : "unknown");
  const auto ka = check_kA(spec, suite, cover, 1);
  bool found = false;
  for (const auto& p : ka.condition1_violations)
    found |= p.q.access == parse_word("c b", in) && p.r.access == parse_word("a c", in);
  rec.expect("1-A check flags the pair (cb, ac)", found,
             std::to_string(ka.condition1_violations.size()) + " violation(s)");
  return rec.take();
}

ReproReport fig4() {
  Recorder rec("fig4");
  const auto spec = fixture_machine("fig4-spec.fsm");
  const auto impl = fixture_machine("fig4-impl.fsm");
  const auto& in = spec.inputs();
  const auto a = fixture_words("fig4-cover-a.txt", in);
  const auto b = fixture_words("fig4-cover-b.txt", in);
  const auto ids = parse_identifiers(fixture_text("fig4-identifiers.txt"), spec);
  const auto suite = generate_wp(spec, b, 0, ids);
  rec.say("Wp suite for B = " + words(b, in) + ": " + words(suite.maximal(), in));

  rec.expect("implementation passes the suite", passes(impl, spec, suite).passed);
  rec.expect("implementation is not equivalent to the spec", !equivalent(spec, impl).equivalent());
  rec.expect("implementation is in U^A", member(impl, FaultDomain::ua(a)));
  rec.expect("implementation is not in U_0^A", !member(impl, FaultDomain::uka(0, a)));
  rec.expect("implementation is not in U_3", !member(impl, FaultDomain::um(3)));
  rec.expect("implementation is neither in U_0^B nor in U^B",
             !member(impl, FaultDomain::uka(0, b)) && !member(impl, FaultDomain::ua(b)));

  const auto with_b = check_kA(spec, suite, b, 0);
  rec.expect("suite is accepted as 0-B-complete", with_b.accepted(),
             with_b.accepted() ? "accepted" : "unknown");
  const auto with_a = check_kA(spec, suite, a, 0);
  rec.expect("suite is not accepted as 0-A-complete", !with_a.accepted(),
             with_a.accepted() ? "accepted" : "unknown");
  return rec.take();
}

ReproReport fig5() {
  Recorder rec("fig5");
  const auto spec = fixture_machine("fig1-spec.fsm");
  const auto& in = spec.inputs();
  const auto suite = fixture_suite("fig5-suite.txt", in);
  const auto cover = fixture_words("fig5-cover.txt", in);
  const auto analysis = analyze_suite(spec, suite, cover);
  const auto& strat = analysis.strat;

  std::vector<std::vector<NodeId>> sets(analysis.tree.size());
  for (NodeId q = 0; q < analysis.tree.size(); ++q) {
    if (strat.in_basis(q)) continue;
    sets[q] = strat.candidate_nodes(q);
    std::string line = "C(" + std::to_string(q) + ") = {";
    for (std::size_t i = 0; i < sets[q].size(); ++i)
      line += (i ? ", " : "") + std::to_string(sets[q][i]);
    rec.say(line + "}   [" + format_word(analysis.tree.access(q), in) + "]");
  }
  const std::vector<std::pair<NodeId, std::vector<NodeId>>> want = {
      {2, {0}},     {5, {8}},     {9, {0}},        {12, {1}},       {3, {1}},
      {10, {1}},    {6, {0, 8}},  {13, {0, 8}},    {4, {0, 1, 8}},  {7, {0, 1, 8}},
      {11, {0, 1, 8}}, {14, {0, 1, 8}}};
  bool all = analysis.tree.size() == 15;
  for (const auto& [q, c] : want) all = all && q < sets.size() && sets[q] == c;
  rec.expect("candidate sets match the listing", all,
             std::to_string(analysis.tree.size()) + " tree nodes");

  const auto r0 = check_kA(spec, suite, cover, 0);
  rec.expect("suite is accepted as 0-A-complete", r0.accepted(),
             r0.accepted() ? "accepted" : "unknown");
  const auto pruned = fixture_suite("fig5-pruned-suite.txt", in);
  const auto r1 = check_kA(spec, pruned, cover, 0);
  rec.expect("suite with b b a in place of b b a a is accepted", r1.accepted(),
             r1.accepted() ? "accepted" : "unknown");
  return rec.take();
}

ReproReport appendix_a() {
  Recorder rec("appendixA");
  const auto spec = fixture_machine("appendixA-spec.fsm");
  const auto impl = fixture_machine("appendixA-impl.fsm");
  const auto& in = spec.inputs();
  const auto suite = fixture_suite("appendixA-suite.txt", in);
  const auto cover = fixture_words("appendixA-cover.txt", in);
  rec.say("cover = " + words(cover, in));

  rec.expect("implementation passes the suite", passes(impl, spec, suite).passed);
  const auto word = parse_word("r r r l l l", in);
  const auto s_out = outputs_on(spec, word), m_out = outputs_on(impl, word);
  rec.expect("r r r l l l distinguishes spec and implementation", s_out != m_out,
             "spec " + s_out + " / impl " + m_out);

  const auto report = check_kA(spec, suite, cover, 1);
  rec.expect("suite is not accepted at k = 1", !report.accepted(),
             report.accepted() ? "accepted" : "unknown");
  bool found = false;
  for (const auto& p : report.condition1_violations) {
    rec.say("violation: (" + format_word(p.q.access, in) + ", " + format_word(p.r.access, in) +
            ")");
    found |= (p.q.access == parse_word("r r r", in) && p.r.access == parse_word("r r r l", in)) ||
             (p.r.access == parse_word("r r r", in) && p.q.access == parse_word("r r r l", in));
  }
  rec.expect("violation pair (rrr, rrrl) is reported", found);

  const auto analysis = analyze_suite(spec, suite, cover);
  const auto t6 = *analysis.tree.find(parse_word("r r r", in));
  const auto t13 = *analysis.tree.find(parse_word("r r r l", in));
  const auto t0 = *analysis.tree.find(Word{});
  const auto t2 = *analysis.tree.find(parse_word("r r", in));
  rec.expect("C(rrr) = {ε}", analysis.strat.candidate_nodes(t6) == std::vector<NodeId>{t0});
  rec.expect("C(rrrl) = {rr}", analysis.strat.candidate_nodes(t13) == std::vector<NodeId>{t2});
  return rec.take();
}

ReproReport tcp_bound() {
  Recorder rec("tcp-bound");
  const auto b = bound_states(55, 13, 2);
  rec.say("n = 55, |I| = 13, k = 2: U_k^A holds machines with up to " + std::to_string(b) +
          " states");
  rec.expect_eq("bound is 9309", b, std::uint64_t{9309}, std::to_string(b));
  return rec.take();
}

const std::vector<std::pair<std::string_view, std::function<ReproReport()>>>& table() {
  static const std::vector<std::pair<std::string_view, std::function<ReproReport()>>> t = {
      {"spyh", spyh}, {"spy", spy},         {"h", h},
      {"fig4", fig4}, {"fig5", fig5},       {"appendixA", appendix_a},
      {"tcp-bound", tcp_bound}};
  return t;
}

}  // namespace

bool ReproReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReproCheck& c) { return c.ok; });
}

std::vector<std::string_view> reproducible_examples() {
  std::vector<std::string_view> out;
  for (const auto& [name, fn] : table()) out.push_back(name);
  return out;
}

ReproReport reproduce(std::string_view example) {
  for (const auto& [name, fn] : table())
    if (name == example) return fn();
  throw Error(ErrorKind::InvalidArgument, "unknown example '" + std::string(example) + "'");
}

std::string render_text(const ReproReport& r) {
  std::ostringstream out;
  out << "example: " << r.example << '\n';
  for (const auto& line : r.narrative) out << "  " << line << '\n';
  for (const auto& c : r.checks) {
    out << (c.ok ? "[ok]   " : "[FAIL] ") << c.claim;
    if (!c.observed.empty()) out << " (" << c.observed << ')';
    out << '\n';
  }
  out << (r.ok() ? "all checks passed\n" : "MISMATCH\n");
  return out.str();
}

std::string render_structured(const ReproReport& r) {
  nlohmann::json doc;
  doc["schema"] = "kacheck.reproduce/1";
  doc["example"] = r.example;
  doc["ok"] = r.ok();
  doc["narrative"] = r.narrative;
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    doc["checks"].push_back({{"claim", c.claim}, {"ok", c.ok}, {"observed", c.observed}});
  return doc.dump(2) + "\n";
}

}  // namespace kac
