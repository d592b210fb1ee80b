#pragma once

// Line-oriented text formats. `#` starts a comment that runs to end of line.
//
//   rbsc 1
//   mode geometric|abstract
//   budget_lines <nonneg-int>|inf
//   budget_red <nonneg-int>
//   point <id> B|R [<xn>/<xd> <yn>/<yd>] [w=<pos-int>]
//   set <id> : <pid> <pid> ...

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/geometry.hpp"
#include "rbsc/model.hpp"
#include "rbsc/source_problems.hpp"

namespace rbsc {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw_line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw_line.find('#'); hash != std::string_view::npos) raw_line = raw_line.substr(0, hash);
    std::istringstream in{std::string(raw_line)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] inline void syntax(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Syntax, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] inline void semantic(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Semantic, "line " + std::to_string(line) + ": " + msg);
}

inline std::uint64_t parse_u64(const std::string& tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) syntax(line, "expected a nonnegative integer, got '" + tok + "'");
  return v;
}

inline std::uint32_t parse_id(const std::string& tok, std::size_t line) {
  auto v = parse_u64(tok, line);
  if (v > UINT32_MAX) syntax(line, "identifier out of range: " + tok);
  return static_cast<std::uint32_t>(v);
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline Rational parse_rational(const std::string& tok, std::size_t line) {
  std::string_view s = tok;
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  std::string_view num_digits = (!num.empty() && num[0] == '-') ? num.substr(1) : num;
  if (!all_digits(num_digits) || !all_digits(den)) semantic(line, "bad rational '" + tok + "'");
  Integer d{std::string(den)};
  if (d == 0) semantic(line, "bad rational '" + tok + "' (zero denominator)");
  return Rational(Integer{std::string(num)}, d);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void expect_header(const std::vector<Line>& lines, std::string_view magic) {
  if (lines.empty()) throw Error(ErrorCode::Syntax, "empty input");
  const auto& h = lines.front();
  if (h.tokens.size() != 2 || h.tokens[0] != magic || h.tokens[1] != "1") {
    syntax(h.number, "expected header '" + std::string(magic) + " 1'");
  }
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  expect_header(lines, "rbsc");

  std::optional<Mode> mode;
  std::optional<LineBudget> budget_lines;
  std::optional<std::uint64_t> budget_red;
  struct PendingPoint {
    Element element;
    bool has_weight;
    std::size_t line;
  };
  std::vector<PendingPoint> points;
  std::vector<std::pair<Set, std::size_t>> sets;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [n, t] = lines[i];
    const std::string& key = t[0];
    if (key == "mode") {
      if (t.size() != 2) syntax(n, "expected 'mode geometric|abstract'");
      if (mode) semantic(n, "mode given twice");
      if (t[1] == "geometric") mode = Mode::Geometric;
      else if (t[1] == "abstract") mode = Mode::Abstract;
      else syntax(n, "unknown mode '" + t[1] + "'");
    } else if (key == "budget_lines") {
      if (t.size() != 2) syntax(n, "expected 'budget_lines <int>|inf'");
      if (budget_lines) semantic(n, "budget_lines given twice");
      budget_lines = t[1] == "inf" ? LineBudget{} : LineBudget{parse_u64(t[1], n)};
    } else if (key == "budget_red") {
      if (t.size() != 2) syntax(n, "expected 'budget_red <int>'");
      if (budget_red) semantic(n, "budget_red given twice");
      budget_red = parse_u64(t[1], n);
    } else if (key == "point") {
      if (t.size() < 3 || t.size() > 6) syntax(n, "expected 'point <id> B|R [<x> <y>] [w=<int>]'");
      Element e;
      e.id = ElementId{parse_id(t[1], n)};
      if (t[2] == "B") e.color = Color::Blue;
      else if (t[2] == "R") e.color = Color::Red;
      else syntax(n, "color must be B or R, got '" + t[2] + "'");
      std::size_t rest = 3;
      bool has_weight = false;
      if (t.size() - rest >= 2 && t[rest].rfind("w=", 0) != 0) {
        e.point = PlanePoint{parse_rational(t[rest], n), parse_rational(t[rest + 1], n)};
        rest += 2;
      }
      if (rest < t.size()) {
        if (t[rest].rfind("w=", 0) != 0 || rest + 1 != t.size()) syntax(n, "unexpected token '" + t[rest] + "'");
        e.weight = parse_u64(t[rest].substr(2), n);
        if (e.weight == 0) semantic(n, "weight must be positive");
        has_weight = true;
      }
      points.push_back({std::move(e), has_weight, n});
    } else if (key == "set") {
      if (t.size() < 3 || t[2] != ":") syntax(n, "expected 'set <id> : <pid> ...'");
      Set s;
      s.id = SetId{parse_id(t[1], n)};
      for (std::size_t j = 3; j < t.size(); ++j) s.members.push_back(ElementId{parse_id(t[j], n)});
      sets.emplace_back(std::move(s), n);
    } else {
      syntax(n, "unknown directive '" + key + "'");
    }
  }
  if (!mode) throw Error(ErrorCode::Syntax, "missing 'mode' line");
  if (!budget_lines) throw Error(ErrorCode::Syntax, "missing 'budget_lines' line");
  if (!budget_red) throw Error(ErrorCode::Syntax, "missing 'budget_red' line");

  Instance inst;
  inst.mode = *mode;
  inst.budget_lines = *budget_lines;
  inst.budget_red = *budget_red;
  std::set<ElementId> element_ids;
  for (auto& p : points) {
    if (!element_ids.insert(p.element.id).second) semantic(p.line, "duplicate point id " + std::to_string(raw(p.element.id)));
    if (p.has_weight && p.element.is_blue()) semantic(p.line, "weight on blue point " + std::to_string(raw(p.element.id)));
    if (inst.mode == Mode::Geometric && !p.element.point) semantic(p.line, "coordinates required in geometric mode");
    if (inst.mode == Mode::Abstract && p.element.point) semantic(p.line, "coordinates not allowed in abstract mode");
    inst.elements.push_back(std::move(p.element));
  }
  std::set<SetId> set_ids;
  for (auto& [s, line] : sets) {
    if (!set_ids.insert(s.id).second) semantic(line, "duplicate set id " + std::to_string(raw(s.id)));
    std::set<ElementId> seen;
    for (auto m : s.members) {
      if (!element_ids.contains(m)) semantic(line, "set " + std::to_string(raw(s.id)) + " references unknown point " + std::to_string(raw(m)));
      if (!seen.insert(m).second) semantic(line, "set " + std::to_string(raw(s.id)) + " lists point " + std::to_string(raw(m)) + " twice");
    }
    inst.family.push_back(std::move(s));
  }
  return canonicalize(std::move(inst));
}

inline std::string serialize(const Instance& input) {
  Instance inst = canonicalize(input);
  std::ostringstream out;
  out << "rbsc 1\n";
  out << "mode " << (inst.mode == Mode::Geometric ? "geometric" : "abstract") << '\n';
  out << "budget_lines ";
  if (inst.budget_lines) out << *inst.budget_lines;
  else out << "inf";
  out << '\n';
  out << "budget_red " << inst.budget_red << '\n';
  for (const auto& e : inst.elements) {
    out << "point " << raw(e.id) << ' ' << (e.is_red() ? 'R' : 'B');
    if (e.point) out << ' ' << to_string(e.point->x) << ' ' << to_string(e.point->y);
    if (e.is_red() && e.weight != 1) out << " w=" << e.weight;
    out << '\n';
  }
  for (const auto& s : inst.family) {
    out << "set " << raw(s.id) << " :";
    for (auto m : s.members) out << ' ' << raw(m);
    out << '\n';
  }
  return out.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(detail::read_file(path)); }

// ---------------------------------------------------------------------------
// Solution files: `solution yes|no`, one `set <id>` per chosen set, then
// `red <count>` and `blue <count>`.

struct SolutionFile {
  bool yes = false;
  std::vector<SetId> sets;
  std::optional<std::uint64_t> red;
  std::optional<std::uint64_t> blue;
};

inline std::string serialize_solution(const std::optional<Solution>& sol) {
  std::ostringstream out;
  out << "solution " << (sol ? "yes" : "no") << '\n';
  if (sol) {
    for (auto id : sol->chosen) out << "set " << raw(id) << '\n';
  }
  out << "red " << (sol ? sol->red_covered : 0) << '\n';
  out << "blue " << (sol ? sol->blue_covered : 0) << '\n';
  return out.str();
}

inline SolutionFile parse_solution(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::Syntax, "empty solution file");
  const auto& h = lines.front();
  if (h.tokens.size() != 2 || h.tokens[0] != "solution" || (h.tokens[1] != "yes" && h.tokens[1] != "no")) {
    syntax(h.number, "expected 'solution yes|no'");
  }
  SolutionFile sf;
  sf.yes = h.tokens[1] == "yes";
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [n, t] = lines[i];
    if (t.size() != 2) syntax(n, "expected '<key> <value>'");
    if (t[0] == "set") sf.sets.push_back(SetId{parse_id(t[1], n)});
    else if (t[0] == "red") sf.red = parse_u64(t[1], n);
    else if (t[0] == "blue") sf.blue = parse_u64(t[1], n);
    else syntax(n, "unknown directive '" + t[0] + "'");
  }
  return sf;
}

// ---------------------------------------------------------------------------
// Set Cover: `setcover 1`, `n <n>`, `k <k>`, `set <id> : <e> ...`

inline SetCoverInstance parse_setcover(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  expect_header(lines, "setcover");
  std::optional<std::uint64_t> n, k;
  std::map<std::uint32_t, std::vector<std::uint32_t>> sets;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, t] = lines[i];
    if (t[0] == "n" && t.size() == 2) {
      n = parse_u64(t[1], ln);
    } else if (t[0] == "k" && t.size() == 2) {
      k = parse_u64(t[1], ln);
    } else if (t[0] == "set" && t.size() >= 3 && t[2] == ":") {
      auto id = parse_id(t[1], ln);
      std::vector<std::uint32_t> members;
      for (std::size_t j = 3; j < t.size(); ++j) members.push_back(parse_id(t[j], ln));
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (!sets.emplace(id, std::move(members)).second) semantic(ln, "duplicate set id " + t[1]);
    } else {
      syntax(ln, "unexpected line");
    }
  }
  if (!n || !k) throw Error(ErrorCode::Syntax, "set cover input needs 'n' and 'k'");
  if (*n > UINT32_MAX) throw Error(ErrorCode::Semantic, "n out of range");
  SetCoverInstance sc;
  sc.n = static_cast<std::uint32_t>(*n);
  sc.k = *k;
  for (auto& [_, members] : sets) sc.sets.push_back(std::move(members));
  sc.check();
  return sc;
}

inline std::string serialize_setcover(const SetCoverInstance& sc) {
  std::ostringstream out;
  out << "setcover 1\nn " << sc.n << "\nk " << sc.k << '\n';
  for (std::size_t i = 0; i < sc.sets.size(); ++i) {
    out << "set " << i << " :";
    for (auto e : sc.sets[i]) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Multicolored graphs: `mcgraph 1`, `classes <k>`, `vertex <id> <class>`,
// `edge <u> <v>`

inline MulticoloredGraph parse_mcgraph(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  expect_header(lines, "mcgraph");
  MulticoloredGraph g;
  bool have_classes = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, t] = lines[i];
    if (t[0] == "classes" && t.size() == 2) {
      g.classes = parse_id(t[1], ln);
      have_classes = true;
    } else if (t[0] == "vertex" && t.size() == 3) {
      g.vertices.push_back({parse_id(t[1], ln), parse_id(t[2], ln)});
    } else if (t[0] == "edge" && t.size() == 3) {
      g.edges.emplace_back(parse_id(t[1], ln), parse_id(t[2], ln));
    } else {
      syntax(ln, "unexpected line");
    }
  }
  if (!have_classes) throw Error(ErrorCode::Syntax, "missing 'classes' line");
  g.normalize();
  return g;
}

inline std::string serialize_mcgraph(const MulticoloredGraph& g) {
  std::ostringstream out;
  out << "mcgraph 1\nclasses " << g.classes << '\n';
  for (const auto& v : g.vertices) out << "vertex " << v.id << ' ' << v.color << '\n';
  for (auto [u, v] : g.edges) out << "edge " << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace rbsc
