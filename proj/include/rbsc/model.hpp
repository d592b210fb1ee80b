#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/geometry.hpp"

namespace rbsc {

enum class ElementId : std::uint32_t {};
enum class SetId : std::uint32_t {};

constexpr std::uint32_t raw(ElementId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(SetId id) { return static_cast<std::uint32_t>(id); }

enum class Color { Red, Blue };
enum class Mode { Geometric, Abstract };

struct Element {
  ElementId id{};
  Color color = Color::Blue;
  std::optional<PlanePoint> point;
  /// Only meaningful for red elements.
  std::uint64_t weight = 1;

  bool is_red() const { return color == Color::Red; }
  bool is_blue() const { return color == Color::Blue; }
  friend bool operator==(const Element&, const Element&) = default;
};

struct Set {
  SetId id{};
  /// Sorted, no repeats.
  std::vector<ElementId> members;

  friend bool operator==(const Set&, const Set&) = default;
};

/// nullopt encodes an unbounded number of sets (the RBSC variant).
using LineBudget = std::optional<std::uint64_t>;

struct Instance {
  Mode mode = Mode::Abstract;
  LineBudget budget_lines = 0;
  std::uint64_t budget_red = 0;
  /// Sorted by id.
  std::vector<Element> elements;
  /// Sorted by id.
  std::vector<Set> family;

  const Element* find_element(ElementId id) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), id,
                               [](const Element& e, ElementId key) { return e.id < key; });
    return (it != elements.end() && it->id == id) ? &*it : nullptr;
  }
  const Set* find_set(SetId id) const {
    auto it = std::lower_bound(family.begin(), family.end(), id, [](const Set& s, SetId key) { return s.id < key; });
    return (it != family.end() && it->id == id) ? &*it : nullptr;
  }

  std::size_t red_count() const {
    return static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(), [](const Element& e) { return e.is_red(); }));
  }
  std::size_t blue_count() const { return elements.size() - red_count(); }
  std::size_t family_size() const { return family.size(); }

  bool weighted() const {
    return std::any_of(elements.begin(), elements.end(), [](const Element& e) { return e.is_red() && e.weight != 1; });
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Sorts elements, sets and set members; the form serialization emits.
inline Instance canonicalize(Instance inst) {
  std::sort(inst.elements.begin(), inst.elements.end(), [](const Element& a, const Element& b) { return a.id < b.id; });
  for (auto& s : inst.family) {
    std::sort(s.members.begin(), s.members.end());
    s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  }
  std::sort(inst.family.begin(), inst.family.end(), [](const Set& a, const Set& b) { return a.id < b.id; });
  return inst;
}

// ---------------------------------------------------------------------------
// Dense incidence view. Solvers work on contiguous indices; ids are mapped
// back when a family is reported.

struct Incidence {
  std::vector<ElementId> element_id;
  std::vector<Color> color;
  std::vector<std::uint64_t> weight;
  std::vector<SetId> set_id;
  std::vector<std::vector<std::uint32_t>> blues;   // per set, ascending element index
  std::vector<std::vector<std::uint32_t>> reds;    // per set, ascending element index
  std::vector<std::vector<std::uint32_t>> sets_of; // per element, ascending set index

  std::size_t element_count() const { return element_id.size(); }
  std::size_t set_count() const { return set_id.size(); }

  std::vector<SetId> ids_of(const std::vector<std::uint32_t>& set_indices) const {
    std::vector<SetId> out;
    out.reserve(set_indices.size());
    for (auto s : set_indices) out.push_back(set_id[s]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline Incidence make_incidence(const Instance& inst) {
  Incidence inc;
  std::map<ElementId, std::uint32_t> index;
  for (const auto& e : inst.elements) {
    if (!index.emplace(e.id, static_cast<std::uint32_t>(inc.element_id.size())).second) {
      throw Error(ErrorCode::InvalidInstance, "duplicate element id " + std::to_string(raw(e.id)));
    }
    inc.element_id.push_back(e.id);
    inc.color.push_back(e.color);
    inc.weight.push_back(e.is_red() ? e.weight : 0);
  }
  inc.sets_of.resize(inc.element_id.size());
  for (const auto& s : inst.family) {
    auto set_index = static_cast<std::uint32_t>(inc.set_id.size());
    inc.set_id.push_back(s.id);
    std::vector<std::uint32_t> blue, red;
    for (auto m : s.members) {
      auto it = index.find(m);
      if (it == index.end()) {
        throw Error(ErrorCode::InvalidInstance,
                    "set " + std::to_string(raw(s.id)) + " references unknown element " + std::to_string(raw(m)));
      }
      (inc.color[it->second] == Color::Blue ? blue : red).push_back(it->second);
      inc.sets_of[it->second].push_back(set_index);
    }
    std::sort(blue.begin(), blue.end());
    std::sort(red.begin(), red.end());
    inc.blues.push_back(std::move(blue));
    inc.reds.push_back(std::move(red));
  }
  return inc;
}

// ---------------------------------------------------------------------------
// Validation

/// First pair of sets sharing two or more elements, if any.
inline std::optional<std::pair<SetId, SetId>> find_linear_violation(const Instance& inst) {
  std::map<ElementId, std::vector<std::size_t>> through;
  for (std::size_t s = 0; s < inst.family.size(); ++s) {
    for (auto m : inst.family[s].members) through[m].push_back(s);
  }
  std::map<std::pair<std::size_t, std::size_t>, int> shared;
  std::optional<std::pair<SetId, SetId>> first;
  for (const auto& [element, sets] : through) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        if (++shared[{sets[i], sets[j]}] == 2) {
          std::pair<SetId, SetId> p{inst.family[sets[i]].id, inst.family[sets[j]].id};
          if (!first || p < *first) first = p;
        }
      }
    }
  }
  return first;
}

inline bool is_linear_system(const Instance& inst) { return !find_linear_violation(inst).has_value(); }

inline void require_linear_system(const Instance& inst) {
  if (auto v = find_linear_violation(inst)) {
    throw Error(ErrorCode::NotLinearSystem, "sets " + std::to_string(raw(v->first)) + " and " +
                                                std::to_string(raw(v->second)) + " share two or more elements");
  }
}

struct ValidationIssue {
  enum class Severity { Error, Warning };
  enum class Kind {
    DuplicateElementId,
    DuplicateSetId,
    DanglingElement,
    RepeatedMember,
    BlueWeight,
    ZeroWeight,
    MissingCoordinates,
    UnexpectedCoordinates,
    DuplicateCoordinates,
    EmptySet,
    NonCollinearSet,
    NonMaximalSet,
    NotLinearSystem,
  };
  Severity severity;
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool linear_system = true;

  bool ok() const {
    return std::none_of(issues.begin(), issues.end(),
                        [](const ValidationIssue& i) { return i.severity == ValidationIssue::Severity::Error; });
  }
  bool has(ValidationIssue::Kind kind) const {
    return std::any_of(issues.begin(), issues.end(), [kind](const ValidationIssue& i) { return i.kind == kind; });
  }
  std::string summary() const {
    std::string out;
    for (const auto& i : issues) {
      out += (i.severity == ValidationIssue::Severity::Error ? "error: " : "warning: ") + i.message + "\n";
    }
    return out;
  }
};

/// Reports every structural problem rather than stopping at the first.
inline ValidationReport validate(const Instance& inst) {
  using Sev = ValidationIssue::Severity;
  using Kind = ValidationIssue::Kind;
  ValidationReport report;
  auto error = [&](Kind k, std::string msg) { report.issues.push_back({Sev::Error, k, std::move(msg)}); };

  std::map<ElementId, const Element*> by_id;
  for (const auto& e : inst.elements) {
    auto id = std::to_string(raw(e.id));
    if (!by_id.emplace(e.id, &e).second) error(Kind::DuplicateElementId, "duplicate element id " + id);
    if (e.is_blue() && e.weight != 1) error(Kind::BlueWeight, "blue element " + id + " carries a weight");
    if (e.is_red() && e.weight == 0) error(Kind::ZeroWeight, "red element " + id + " has weight 0");
    if (inst.mode == Mode::Geometric && !e.point) error(Kind::MissingCoordinates, "element " + id + " has no coordinates");
    if (inst.mode == Mode::Abstract && e.point) error(Kind::UnexpectedCoordinates, "element " + id + " has coordinates in abstract mode");
  }

  std::set<SetId> set_ids;
  for (const auto& s : inst.family) {
    auto id = std::to_string(raw(s.id));
    if (!set_ids.insert(s.id).second) error(Kind::DuplicateSetId, "duplicate set id " + id);
    std::set<ElementId> seen;
    for (auto m : s.members) {
      if (!by_id.contains(m)) error(Kind::DanglingElement, "set " + id + " references unknown element " + std::to_string(raw(m)));
      if (!seen.insert(m).second) error(Kind::RepeatedMember, "set " + id + " lists element " + std::to_string(raw(m)) + " twice");
    }
  }

  if (inst.mode == Mode::Geometric) {
    std::vector<const Element*> located;
    for (const auto& e : inst.elements) {
      if (e.point) located.push_back(&e);
    }
    std::sort(located.begin(), located.end(), [](const Element* a, const Element* b) { return *a->point < *b->point; });
    for (std::size_t i = 1; i < located.size(); ++i) {
      if (*located[i - 1]->point == *located[i]->point) {
        error(Kind::DuplicateCoordinates, "elements " + std::to_string(raw(located[i - 1]->id)) + " and " +
                                              std::to_string(raw(located[i]->id)) + " share coordinates");
      }
    }
    for (const auto& s : inst.family) {
      auto id = std::to_string(raw(s.id));
      std::vector<const PlanePoint*> pts;
      for (auto m : s.members) {
        auto it = by_id.find(m);
        if (it != by_id.end() && it->second->point) pts.push_back(&*it->second->point);
      }
      if (s.members.empty()) {
        error(Kind::EmptySet, "set " + id + " is empty");
        continue;
      }
      if (pts.size() != s.members.size()) continue;  // already reported
      // A single point always spans a line through no other point.
      std::size_t second = 1;
      while (second < pts.size() && *pts[second] == *pts[0]) ++second;
      if (second >= pts.size()) continue;
      auto line = canonical_line(*pts[0], *pts[second]);
      bool collinear_ok = std::all_of(pts.begin(), pts.end(), [&](const PlanePoint* p) { return line.contains(*p); });
      if (!collinear_ok) {
        error(Kind::NonCollinearSet, "set " + id + " is not collinear");
        continue;
      }
      std::set<ElementId> members(s.members.begin(), s.members.end());
      for (const auto& e : inst.elements) {
        if (e.point && !members.contains(e.id) && line.contains(*e.point)) {
          error(Kind::NonMaximalSet, "set " + id + " is not maximal: element " + std::to_string(raw(e.id)) + " lies on its line");
        }
      }
    }
  }

  if (auto v = find_linear_violation(inst)) {
    report.linear_system = false;
    report.issues.push_back({Sev::Warning, Kind::NotLinearSystem,
                             "not a linear set system: sets " + std::to_string(raw(v->first)) + " and " +
                                 std::to_string(raw(v->second)) + " share two or more elements"});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Solutions

/// Work counters reported by the exponential solvers.
struct SolverStats {
  std::uint64_t tuples = 0;    // good tuples enumerated
  std::uint64_t branches = 0;  // F2 branches or DP cells
  std::uint64_t nodes = 0;     // search nodes / subsets visited
};

struct Solution {
  std::vector<SetId> chosen;  // sorted
  std::size_t blue_covered = 0;
  std::size_t blue_total = 0;
  /// Weighted: each covered red element contributes its weight once.
  std::uint64_t red_covered = 0;
  std::vector<SetId> forced;  // sorted, subset of chosen
  bool within_lines = true;
  bool within_red = true;

  bool all_blue_covered() const { return blue_covered == blue_total; }
  bool feasible() const { return all_blue_covered() && within_lines && within_red; }

  /// Human-readable reason for infeasibility, empty when feasible.
  std::string failure_reason() const {
    std::string out;
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
    if (!all_blue_covered()) add(std::to_string(blue_total - blue_covered) + " blue element(s) uncovered");
    if (!within_lines) add("line budget exceeded");
    if (!within_red) add("red budget exceeded");
    return out;
  }
};

/// Recomputes coverage of `chosen` from scratch.
inline Solution verify(const Instance& inst, std::vector<SetId> chosen) {
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  std::set<ElementId> covered;
  for (auto id : chosen) {
    const Set* s = inst.find_set(id);
    if (!s) throw Error(ErrorCode::UnknownSetId, "set " + std::to_string(raw(id)) + " is not in the family");
    covered.insert(s->members.begin(), s->members.end());
  }
  Solution sol;
  sol.chosen = std::move(chosen);
  for (const auto& e : inst.elements) {
    bool hit = covered.contains(e.id);
    if (e.is_blue()) {
      ++sol.blue_total;
      if (hit) ++sol.blue_covered;
    } else if (hit) {
      sol.red_covered += e.weight;
    }
  }
  sol.within_lines = !inst.budget_lines || sol.chosen.size() <= *inst.budget_lines;
  sol.within_red = sol.red_covered <= inst.budget_red;
  return sol;
}

inline Solution verify(const Instance& inst, std::vector<SetId> chosen, std::vector<SetId> forced) {
  Solution sol = verify(inst, std::move(chosen));
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
  sol.forced = std::move(forced);
  return sol;
}

// ---------------------------------------------------------------------------
// Structural edits shared by the kernelization rules.

/// Removes `ids` from the universe and from every set. Deleting points can
/// break maximality, so the instance drops to abstract mode.
inline void delete_elements(Instance& inst, const std::vector<ElementId>& ids) {
  if (ids.empty()) return;
  std::set<ElementId> gone(ids.begin(), ids.end());
  std::erase_if(inst.elements, [&](const Element& e) { return gone.contains(e.id); });
  for (auto& s : inst.family) std::erase_if(s.members, [&](ElementId m) { return gone.contains(m); });
  inst.mode = Mode::Abstract;
  for (auto& e : inst.elements) e.point.reset();
}

inline void remove_sets(Instance& inst, const std::vector<SetId>& ids) {
  if (ids.empty()) return;
  std::set<SetId> gone(ids.begin(), ids.end());
  std::erase_if(inst.family, [&](const Set& s) { return gone.contains(s.id); });
}

/// Sets that cleanup would drop: empty sets, and every duplicate except the
/// one with the smallest id.
inline std::vector<SetId> redundant_sets(const Instance& inst) {
  std::vector<SetId> out;
  std::map<std::vector<ElementId>, SetId> first_with;
  for (const auto& s : inst.family) {  // ascending id
    if (s.members.empty()) {
      out.push_back(s.id);
    } else if (!first_with.emplace(s.members, s.id).second) {
      out.push_back(s.id);
    }
  }
  return out;
}

}  // namespace rbsc
