#include "kac/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "kac/error.hpp"

namespace kac {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    out.push_back({number, std::move(t)});
  }
  return out;
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::optional<std::string> keyed(const std::string& line, std::string_view key) {
  if (line.rfind(key, 0) != 0 || line.size() <= key.size() || line[key.size()] != ':')
    return std::nullopt;
  return line.substr(key.size() + 1);
}

struct ParsedEdge {
  std::size_t line;
  std::string from, input, output, to;
};

}  // namespace

MealyMachine parse_machine(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty() || lines[0].text != "mealy")
    fail(lines.empty() ? 1 : lines[0].number, "expected header 'mealy'");

  std::optional<std::vector<std::string>> inputs, outputs, states;
  std::optional<std::string> initial;
  std::size_t initial_line = 0;
  std::vector<ParsedEdge> edges;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [number, line] = lines[k];
    if (auto v = keyed(line, "inputs")) {
      inputs = tokens(*v);
    } else if (auto v = keyed(line, "outputs")) {
      outputs = tokens(*v);
    } else if (auto v = keyed(line, "states")) {
      states = tokens(*v);
    } else if (auto v = keyed(line, "initial")) {
      auto t = tokens(*v);
      if (t.size() != 1) fail(number, "expected exactly one initial state");
      initial = t[0];
      initial_line = number;
    } else {
      auto t = tokens(line);
      if (t.size() != 3) fail(number, "expected 'state -input/output-> state'");
      const std::string& label = t[1];
      auto slash = label.find('/');
      if (label.size() < 5 || label.front() != '-' || label.substr(label.size() - 2) != "->" ||
          slash == std::string::npos || slash < 2 || slash + 3 > label.size())
        fail(number, "malformed transition label '" + label + "'");
      edges.push_back({number, t[0], label.substr(1, slash - 1),
                       label.substr(slash + 1, label.size() - slash - 3), t[2]});
    }
  }
  if (!inputs) fail(lines.back().number, "missing 'inputs:' line");
  if (!outputs) fail(lines.back().number, "missing 'outputs:' line");
  if (!initial) fail(lines.back().number, "missing 'initial:' line");

  std::vector<std::string> sorted_inputs = *inputs;
  std::sort(sorted_inputs.begin(), sorted_inputs.end());
  if (std::adjacent_find(sorted_inputs.begin(), sorted_inputs.end()) != sorted_inputs.end())
    fail(lines[0].number, "duplicate input symbol");
  MealyMachine m{Alphabet(sorted_inputs), Alphabet(*outputs)};
  if (m.outputs().size() != outputs->size()) fail(lines[0].number, "duplicate output symbol");

  auto state = [&](const std::string& name) {
    if (auto q = m.find_state(name)) return *q;
    return m.add_state(name);
  };
  if (states)
    for (const auto& s : *states) {
      if (m.find_state(s)) fail(lines[0].number, "duplicate state '" + s + "'");
      m.add_state(s);
    }
  if (states && !m.find_state(*initial)) fail(initial_line, "initial state not listed");
  m.set_initial(state(*initial));

  for (const auto& e : edges) {
    if (states && (!m.find_state(e.from) || !m.find_state(e.to)))
      fail(e.line, "transition mentions an unlisted state");
    auto i = m.inputs().find(e.input);
    if (!i) fail(e.line, "unknown input '" + e.input + "'");
    auto o = m.outputs().find(e.output);
    if (!o) fail(e.line, "unknown output '" + e.output + "'");
    StateId from = state(e.from);
    StateId to = state(e.to);
    if (m.defined(from, *i))
      fail(e.line, "duplicate transition for state '" + e.from + "' on input '" + e.input + "'");
    m.define(from, *i, to, *o);
  }
  return m;
}

std::string serialize_machine(const MealyMachine& m) {
  std::ostringstream out;
  out << "mealy\ninputs:";
  for (const auto& n : m.inputs().names()) out << ' ' << n;
  out << "\noutputs:";
  for (const auto& n : m.outputs().names()) out << ' ' << n;
  out << "\nstates:";
  for (StateId q = 0; q < m.num_states(); ++q) out << ' ' << m.state_name(q);
  out << "\ninitial: " << m.state_name(m.initial()) << '\n';
  for (StateId q = 0; q < m.num_states(); ++q)
    for (Symbol i = 0; i < m.num_inputs(); ++i)
      if (auto t = m.transition(q, i))
        out << m.state_name(q) << " -" << m.inputs().name(i) << '/'
            << m.outputs().name(t->output) << "-> " << m.state_name(t->target) << '\n';
  return out.str();
}

std::string to_dot(const MealyMachine& m) {
  std::ostringstream out;
  out << "digraph mealy {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (StateId q = 0; q < m.num_states(); ++q)
    out << "  \"" << m.state_name(q) << "\" [shape=circle];\n";
  out << "  __start -> \"" << m.state_name(m.initial()) << "\";\n";
  for (StateId q = 0; q < m.num_states(); ++q)
    for (Symbol i = 0; i < m.num_inputs(); ++i)
      if (auto t = m.transition(q, i))
        out << "  \"" << m.state_name(q) << "\" -> \"" << m.state_name(t->target)
            << "\" [label=\"" << m.inputs().name(i) << '/' << m.outputs().name(t->output)
            << "\"];\n";
  out << "}\n";
  return out.str();
}

TestSuite parse_suite(std::string_view text, const Alphabet& inputs) {
  TestSuite suite;
  for (const auto& [number, line] : content_lines(text)) {
    try {
      suite.add(parse_word(line, inputs));
    } catch (const Error& e) {
      fail(number, e.what());
    }
  }
  return suite;
}

std::string serialize_suite(const TestSuite& suite, const Alphabet& inputs) {
  std::string out;
  for (const auto& w : suite.maximal()) {
    if (w.empty()) continue;
    out += format_word(w, inputs);
    out += '\n';
  }
  return out;
}

std::vector<Word> parse_word_list(std::string_view text, const Alphabet& inputs) {
  std::vector<Word> out;
  for (const auto& [number, line] : content_lines(text)) {
    try {
      out.push_back(parse_word(line, inputs));
    } catch (const Error& e) {
      fail(number, e.what());
    }
  }
  return out;
}

std::string serialize_word_list(const std::vector<Word>& words, const Alphabet& inputs) {
  std::string out;
  for (const auto& w : words) out += format_word(w, inputs) + '\n';
  return out;
}

SeparatingFamily parse_identifiers(std::string_view text, const MealyMachine& m) {
  SeparatingFamily family;
  family.identifiers.resize(m.num_states());
  for (const auto& [number, line] : content_lines(text)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(number, "expected 'state: word ; word'");
    auto q = m.find_state(trim(line.substr(0, colon)));
    if (!q) fail(number, "unknown state '" + trim(line.substr(0, colon)) + "'");
    std::string rest = line.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto end = rest.find(';', start);
      if (end == std::string::npos) end = rest.size();
      std::string piece = trim(std::string_view(rest).substr(start, end - start));
      if (!piece.empty()) {
        try {
          family.identifiers[*q].push_back(parse_word(piece, m.inputs()));
        } catch (const Error& e) {
          fail(number, e.what());
        }
      }
      start = end + 1;
    }
  }
  for (auto& ws : family.identifiers) {
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  }
  return family;
}

std::string serialize_identifiers(const SeparatingFamily& family, const MealyMachine& m) {
  std::string out;
  for (StateId q = 0; q < family.identifiers.size(); ++q) {
    out += m.state_name(q) + ":";
    const auto& ws = family.of(q);
    for (std::size_t k = 0; k < ws.size(); ++k) {
      out += k ? " ; " : " ";
      out += format_word(ws[k], m.inputs());
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace kac
