#include "kac/report.hpp"

#include <sstream>

#include "json.hpp"

namespace kac {

namespace {

const char* mode_name(CheckMode mode) { return mode == CheckMode::KA ? "kA" : "m"; }

std::string verdict_name(const CompletenessReport& r) {
  return r.accepted() ? "accepted" : "unknown";
}

}  // namespace

std::string render_text(const CompletenessReport& r) {
  std::ostringstream out;
  if (r.mode == CheckMode::KA)
    out << "check: " << r.k << "-A-completeness\n";
  else
    out << "check: m-completeness, m = " << r.spec_states + r.k << " (k = " << r.k << ")\n";
  out << "cover A: {";
  for (std::size_t i = 0; i < r.cover.size(); ++i)
    out << (i ? ", " : "") << format_word(r.cover[i], r.inputs);
  out << "}\nspec states: " << r.spec_states << ", basis size: " << r.basis_size
      << ", tree nodes: " << r.tree_nodes << ", maximal tests: " << r.maximal_tests << '\n';
  out << "basis valid: " << (r.basis_ok ? "yes" : "no")
      << ", basis complete: " << (r.basis_complete ? "yes" : "no") << '\n';
  for (std::size_t j = 0; j < r.frontier_complete.size(); ++j)
    out << "F^" << j << " complete: " << (r.frontier_complete[j] ? "yes" : "no") << '\n';
  if (r.accepted()) {
    out << "verdict: ACCEPTED (suite is proven "
        << (r.mode == CheckMode::KA ? std::to_string(r.k) + "-A-complete" : "m-complete")
        << ")\n";
  } else {
    out << "verdict: UNKNOWN (sufficient condition not met; completeness is not decided)\n";
    for (const auto& reason : r.reasons) out << "  - " << reason << '\n';
  }
  return out.str();
}

std::string render_structured(const CompletenessReport& r) {
  using nlohmann::json;
  auto words = [&](const NodePair& p) {
    return json::array({format_word(p.q.access, r.inputs), format_word(p.r.access, r.inputs)});
  };
  json doc;
  doc["schema"] = "kacheck.report/1";
  doc["mode"] = mode_name(r.mode);
  doc["k"] = r.k;
  doc["verdict"] = verdict_name(r);
  doc["accepted"] = r.accepted();
  doc["spec_states"] = r.spec_states;
  doc["basis_size"] = r.basis_size;
  doc["tree_nodes"] = r.tree_nodes;
  doc["maximal_tests"] = r.maximal_tests;
  doc["cover"] = json::array();
  for (const auto& w : r.cover) doc["cover"].push_back(format_word(w, r.inputs));
  json c;
  c["basis_ok"] = r.basis_ok;
  c["basis_complete"] = r.basis_complete;
  c["frontier_complete"] = r.frontier_complete;
  c["unidentified"] = json::array();
  for (const auto& n : r.unidentified) c["unidentified"].push_back(format_word(n.access, r.inputs));
  c["condition1_violations"] = json::array();
  for (const auto& p : r.condition1_violations) c["condition1_violations"].push_back(words(p));
  c["condition3_violations"] = json::array();
  for (const auto& p : r.condition3_violations) c["condition3_violations"].push_back(words(p));
  doc["conditions"] = std::move(c);
  doc["reasons"] = r.reasons;
  return doc.dump(2) + "\n";
}

}  // namespace kac
