#pragma once

// Reduction rules and kernelization pipelines. Every change to an instance
// is expressed as a TraceEntry and applied through apply_entry, so replaying
// a trace on the original instance reproduces the kernel exactly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/model.hpp"

namespace rbsc {

struct TraceEntry {
  std::string rule;
  std::vector<SetId> removed_sets;
  std::vector<SetId> forced_sets;
  std::vector<ElementId> deleted_elements;
  std::vector<std::pair<ElementId, std::uint64_t>> reweighted;
  std::int64_t delta_lines = 0;
  std::int64_t delta_red = 0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct KernelTrace {
  std::vector<TraceEntry> entries;

  bool empty() const { return entries.empty(); }
  void append(const std::vector<TraceEntry>& more) { entries.insert(entries.end(), more.begin(), more.end()); }
  void append(const KernelTrace& more) { append(more.entries); }

  /// One rule application per line.
  std::string to_string() const {
    auto join = [](const auto& ids) {
      if (ids.empty()) return std::string("-");
      std::string s;
      for (const auto& id : ids) s += (s.empty() ? "" : ",") + std::to_string(raw(id));
      return s;
    };
    std::ostringstream out;
    for (const auto& e : entries) {
      out << e.rule << " removed=" << join(e.removed_sets) << " forced=" << join(e.forced_sets)
          << " deleted=" << join(e.deleted_elements) << " reweight=";
      if (e.reweighted.empty()) out << '-';
      for (std::size_t i = 0; i < e.reweighted.size(); ++i) {
        out << (i ? "," : "") << raw(e.reweighted[i].first) << ':' << e.reweighted[i].second;
      }
      out << " lines=" << e.delta_lines << " red=" << e.delta_red << '\n';
    }
    return out.str();
  }
};

inline void apply_entry(Instance& inst, const TraceEntry& e) {
  remove_sets(inst, e.forced_sets);
  remove_sets(inst, e.removed_sets);
  delete_elements(inst, e.deleted_elements);
  for (auto [id, w] : e.reweighted) {
    auto it = std::find_if(inst.elements.begin(), inst.elements.end(), [id](const Element& el) { return el.id == id; });
    if (it == inst.elements.end()) throw Error(ErrorCode::InvalidInstance, "reweight of unknown element");
    it->weight = w;
  }
  if (inst.budget_lines) {
    auto v = static_cast<std::int64_t>(*inst.budget_lines) + e.delta_lines;
    if (v < 0) throw Error(ErrorCode::InvalidInstance, "line budget driven negative by " + e.rule);
    inst.budget_lines = static_cast<std::uint64_t>(v);
  }
  auto r = static_cast<std::int64_t>(inst.budget_red) + e.delta_red;
  if (r < 0) throw Error(ErrorCode::InvalidInstance, "red budget driven negative by " + e.rule);
  inst.budget_red = static_cast<std::uint64_t>(r);
}

inline Instance replay(Instance original, const KernelTrace& trace) {
  for (const auto& e : trace.entries) apply_entry(original, e);
  return original;
}

struct RuleOutcome {
  bool changed = false;
  Instance instance;
  std::vector<TraceEntry> entries;
  std::vector<SetId> forced;
  /// Set when the rule proves the instance is a NO instance.
  std::optional<std::string> no_certificate;
};

struct KernelResult {
  Instance kernel;
  KernelTrace trace;
  std::vector<SetId> forced;
  std::optional<std::string> no_certificate;

  bool is_no() const { return no_certificate.has_value(); }
};

namespace detail {

struct SetProfile {
  std::size_t blue = 0;
  std::size_t red = 0;
  std::uint64_t red_weight = 0;
};

inline SetProfile profile(const Instance& inst, const Set& s) {
  SetProfile p;
  for (auto m : s.members) {
    const Element* e = inst.find_element(m);
    if (!e) throw Error(ErrorCode::InvalidInstance, "set " + std::to_string(raw(s.id)) + " references unknown element");
    if (e->is_blue()) {
      ++p.blue;
    } else {
      ++p.red;
      p.red_weight += e->weight;
    }
  }
  return p;
}

inline RuleOutcome outcome_from(Instance inst, std::vector<TraceEntry> entries, std::vector<SetId> forced = {}) {
  RuleOutcome out;
  out.changed = !entries.empty();
  for (const auto& e : entries) apply_entry(inst, e);
  out.instance = std::move(inst);
  out.entries = std::move(entries);
  out.forced = std::move(forced);
  return out;
}

inline std::optional<TraceEntry> cleanup_entry(const Instance& inst) {
  auto redundant = redundant_sets(inst);
  if (redundant.empty()) return std::nullopt;
  TraceEntry e;
  e.rule = "cleanup";
  e.removed_sets = std::move(redundant);
  return e;
}

inline std::optional<std::string> uncovered_blue(const Instance& inst) {
  std::set<ElementId> covered;
  for (const auto& s : inst.family) covered.insert(s.members.begin(), s.members.end());
  for (const auto& e : inst.elements) {
    if (e.is_blue() && !covered.contains(e.id)) return "blue element " + std::to_string(raw(e.id)) + " lies in no set";
  }
  return std::nullopt;
}

inline RuleOutcome force_big_blue_unchecked(const Instance& inst) {
  std::uint64_t k_lines = *inst.budget_lines;
  for (const auto& s : inst.family) {
    auto p = profile(inst, s);
    if (p.blue < k_lines + 1) continue;
    RuleOutcome out;
    out.instance = inst;
    if (k_lines == 0) {
      out.changed = true;
      out.no_certificate = "set " + std::to_string(raw(s.id)) + " must be taken but the line budget is 0";
      return out;
    }
    if (p.red_weight > inst.budget_red) {
      out.changed = true;
      out.no_certificate = "set " + std::to_string(raw(s.id)) + " must be taken but covers more red than the budget";
      return out;
    }
    TraceEntry e;
    e.rule = "force-big-blue";
    e.forced_sets = {s.id};
    e.deleted_elements = s.members;
    e.delta_lines = -1;
    e.delta_red = -static_cast<std::int64_t>(p.red_weight);
    Instance next = inst;
    apply_entry(next, e);
    std::vector<TraceEntry> entries{e};
    if (auto c = cleanup_entry(next)) {
      apply_entry(next, *c);
      entries.push_back(std::move(*c));
    }
    out.changed = true;
    out.instance = std::move(next);
    out.entries = std::move(entries);
    out.forced = {s.id};
    return out;
  }
  return outcome_from(inst, {});
}

inline bool square_exceeds(std::uint64_t k, std::size_t b) {
  if (k >= (std::uint64_t{1} << 32)) return false;
  return b > k * k;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rules

/// Removes every set that contains no blue element.
inline RuleOutcome rule_delete_red_only(const Instance& inst) {
  TraceEntry e;
  e.rule = "delete-red-only";
  for (const auto& s : inst.family) {
    if (detail::profile(inst, s).blue == 0) e.removed_sets.push_back(s.id);
  }
  if (e.removed_sets.empty()) return detail::outcome_from(inst, {});
  return detail::outcome_from(inst, {e});
}

/// Removes every set whose red weight exceeds the red budget.
inline RuleOutcome rule_delete_heavy_red(const Instance& inst) {
  TraceEntry e;
  e.rule = "delete-heavy-red";
  for (const auto& s : inst.family) {
    if (detail::profile(inst, s).red_weight > inst.budget_red) e.removed_sets.push_back(s.id);
  }
  if (e.removed_sets.empty()) return detail::outcome_from(inst, {});
  return detail::outcome_from(inst, {e});
}

/// A set with at least k_lines + 1 blue elements belongs to every solution:
/// commit it, charge its reds, and delete its elements everywhere. Applies to
/// the smallest qualifying SetId only; pipelines iterate.
inline RuleOutcome rule_force_big_blue(const Instance& inst) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "force-big-blue needs a finite line budget");
  require_linear_system(inst);
  return detail::force_big_blue_unchecked(inst);
}

/// Without a line budget, red-free sets can always be taken.
inline RuleOutcome rule_take_blue_only(const Instance& inst) {
  if (inst.budget_lines) throw Error(ErrorCode::BoundedBudget, "take-blue-only is only safe without a line budget");
  TraceEntry e;
  e.rule = "take-blue-only";
  std::set<ElementId> blues;
  for (const auto& s : inst.family) {
    if (s.members.empty()) continue;
    if (detail::profile(inst, s).red == 0) {
      e.forced_sets.push_back(s.id);
      blues.insert(s.members.begin(), s.members.end());
    }
  }
  if (e.forced_sets.empty()) return detail::outcome_from(inst, {});
  e.deleted_elements.assign(blues.begin(), blues.end());
  Instance next = inst;
  apply_entry(next, e);
  std::vector<TraceEntry> entries{e};
  if (auto c = detail::cleanup_entry(next)) entries.push_back(std::move(*c));
  return detail::outcome_from(inst, std::move(entries), e.forced_sets);
}

// ---------------------------------------------------------------------------
// Pipelines

namespace detail {

inline KernelResult fixed_point_kl_kr(const Instance& inst) {
  KernelResult res;
  res.kernel = inst;
  for (bool changed = true; changed;) {
    changed = false;
    for (int rule = 0; rule < 3; ++rule) {
      RuleOutcome out = rule == 0   ? rule_delete_red_only(res.kernel)
                        : rule == 1 ? rule_delete_heavy_red(res.kernel)
                                    : force_big_blue_unchecked(res.kernel);
      if (out.no_certificate) {
        res.no_certificate = out.no_certificate;
        return res;
      }
      if (!out.changed) continue;
      changed = true;
      res.kernel = std::move(out.instance);
      res.trace.append(out.entries);
      res.forced.insert(res.forced.end(), out.forced.begin(), out.forced.end());
    }
  }
  if (auto why = uncovered_blue(res.kernel)) {
    res.no_certificate = *why;
  } else if (square_exceeds(*res.kernel.budget_lines, res.kernel.blue_count())) {
    res.no_certificate = std::to_string(res.kernel.blue_count()) + " blue elements remain, more than k_lines^2 = " +
                         std::to_string(*res.kernel.budget_lines * *res.kernel.budget_lines);
  }
  return res;
}

inline void append_result(KernelResult& into, KernelResult&& more) {
  into.kernel = std::move(more.kernel);
  into.trace.append(more.trace);
  into.forced.insert(into.forced.end(), more.forced.begin(), more.forced.end());
  into.no_certificate = std::move(more.no_certificate);
}

}  // namespace detail

/// Exhaustive red-only / heavy-red / big-blue reduction, then the blue-count
/// bound b <= k_lines^2.
inline KernelResult kernelize_kl_kr(const Instance& inst) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "kl-kr kernel needs a finite line budget");
  require_linear_system(inst);
  return detail::fixed_point_kl_kr(inst);
}

/// Kernel in the number of sets: after kl-kr, the line budget is capped at
/// the family size and the reds exclusive to each set collapse into one red
/// carrying their total weight. Reds on no set are dropped.
inline KernelResult kernelize_ell(const Instance& inst) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "ell kernel needs a finite line budget");
  require_linear_system(inst);
  KernelResult res;
  res.kernel = inst;
  for (bool again = true; again;) {
    again = false;
    auto step = detail::fixed_point_kl_kr(res.kernel);
    detail::append_result(res, std::move(step));
    if (res.is_no()) return res;
    if (*res.kernel.budget_lines > res.kernel.family_size()) {
      TraceEntry cap;
      cap.rule = "cap-lines";
      cap.delta_lines = static_cast<std::int64_t>(res.kernel.family_size()) - static_cast<std::int64_t>(*res.kernel.budget_lines);
      apply_entry(res.kernel, cap);
      res.trace.entries.push_back(cap);
      again = true;
    }
  }

  std::map<ElementId, std::size_t> degree;
  for (const auto& s : res.kernel.family) {
    for (auto m : s.members) ++degree[m];
  }
  TraceEntry drop;
  drop.rule = "drop-uncovered-red";
  for (const auto& e : res.kernel.elements) {
    if (e.is_red() && !degree.contains(e.id)) drop.deleted_elements.push_back(e.id);
  }
  if (!drop.deleted_elements.empty()) {
    apply_entry(res.kernel, drop);
    res.trace.entries.push_back(std::move(drop));
  }
  for (std::size_t i = 0; i < res.kernel.family.size(); ++i) {
    const Set s = res.kernel.family[i];
    std::vector<const Element*> exclusive;
    for (auto m : s.members) {
      const Element* e = res.kernel.find_element(m);
      if (e->is_red() && degree[m] == 1) exclusive.push_back(e);
    }
    if (exclusive.size() < 2) continue;
    TraceEntry merge;
    merge.rule = "merge-exclusive-red";
    std::uint64_t total = 0;
    for (const auto* e : exclusive) total += e->weight;
    merge.reweighted.emplace_back(exclusive.front()->id, total);
    for (std::size_t j = 1; j < exclusive.size(); ++j) merge.deleted_elements.push_back(exclusive[j]->id);
    apply_entry(res.kernel, merge);
    res.trace.entries.push_back(std::move(merge));
  }
  return res;
}

/// Kernel in k_lines + r: after kl-kr, among sets consisting of a single
/// blue element keep only the smallest SetId per element.
inline KernelResult kernelize_kl_r(const Instance& inst) {
  KernelResult res = kernelize_kl_kr(inst);
  if (res.is_no()) return res;
  TraceEntry e;
  e.rule = "dedupe-single-blue";
  std::set<ElementId> seen;
  for (const auto& s : res.kernel.family) {
    if (s.members.size() != 1) continue;
    const Element* el = res.kernel.find_element(s.members.front());
    if (!el->is_blue()) continue;
    if (!seen.insert(el->id).second) e.removed_sets.push_back(s.id);
  }
  if (!e.removed_sets.empty()) {
    apply_entry(res.kernel, e);
    res.trace.entries.push_back(std::move(e));
  }
  return res;
}

/// RBSC preprocessing: red-only, heavy-red and take-blue-only to a fixed
/// point, then a NO certificate if some blue element lies in no set.
inline KernelResult reduce_rbsc(const Instance& inst) {
  if (inst.budget_lines) throw Error(ErrorCode::BoundedBudget, "RBSC reduction needs an unbounded line budget");
  KernelResult res;
  res.kernel = inst;
  for (bool changed = true; changed;) {
    changed = false;
    for (int rule = 0; rule < 3; ++rule) {
      RuleOutcome out = rule == 0   ? rule_delete_red_only(res.kernel)
                        : rule == 1 ? rule_delete_heavy_red(res.kernel)
                                    : rule_take_blue_only(res.kernel);
      if (!out.changed) continue;
      changed = true;
      res.kernel = std::move(out.instance);
      res.trace.append(out.entries);
      res.forced.insert(res.forced.end(), out.forced.begin(), out.forced.end());
    }
  }
  if (auto why = detail::uncovered_blue(res.kernel)) res.no_certificate = *why;
  return res;
}

}  // namespace rbsc
