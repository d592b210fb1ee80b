#pragma once

// Brute-force ground truth. Everything else is property-tested against
// brute_force_solve on instances inside its guard.

#include <cstdint>
#include <optional>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/model.hpp"

namespace rbsc {

inline constexpr std::size_t kMaxBruteSets = 25;
inline constexpr std::size_t kMaxBruteReds = 25;

struct GuardOptions {
  bool enforce = true;
};

/// Enumerates every subfamily of at most k_lines sets (all subfamilies when
/// the line budget is unbounded) and returns the feasible one minimizing
/// (red weight, size), ties broken by the lexicographically smallest id list.
inline std::optional<Solution> brute_force_solve(const Instance& inst, GuardOptions guard = {}, SolverStats* stats = nullptr) {
  if (guard.enforce && inst.family_size() > kMaxBruteSets) {
    throw Error(ErrorCode::TooLarge, std::to_string(inst.family_size()) + " sets exceed the brute-force guard of " +
                                         std::to_string(kMaxBruteSets));
  }
  const Incidence inc = make_incidence(inst);
  const std::size_t ell = inc.set_count();
  const std::size_t limit = inst.budget_lines ? std::min<std::uint64_t>(*inst.budget_lines, ell) : ell;
  const std::size_t blue_total = inst.blue_count();

  std::vector<std::uint32_t> cover(inc.element_count(), 0);
  std::size_t blue_covered = 0;
  std::uint64_t red_weight = 0;
  std::vector<std::uint32_t> chosen;

  struct Best {
    std::uint64_t red;
    std::vector<std::uint32_t> sets;
  };
  std::optional<Best> best;
  std::uint64_t nodes = 0;

  auto add = [&](std::uint32_t s, int delta) {
    for (auto e : inc.blues[s]) {
      if (delta > 0 ? cover[e]++ == 0 : --cover[e] == 0) blue_covered += delta > 0 ? 1 : std::size_t(-1);
    }
    for (auto e : inc.reds[s]) {
      if (delta > 0) {
        if (cover[e]++ == 0) red_weight += inc.weight[e];
      } else if (--cover[e] == 0) {
        red_weight -= inc.weight[e];
      }
    }
  };

  auto better = [&](std::uint64_t red, const std::vector<std::uint32_t>& sets) {
    if (!best) return true;
    if (red != best->red) return red < best->red;
    if (sets.size() != best->sets.size()) return sets.size() < best->sets.size();
    return sets < best->sets;
  };

  auto dfs = [&](auto&& self, std::size_t next) -> void {
    ++nodes;
    if (blue_covered == blue_total) {
      // Supersets only add sets and reds.
      if (better(red_weight, chosen)) best = Best{red_weight, chosen};
      return;
    }
    if (next == ell || chosen.size() == limit) return;
    auto s = static_cast<std::uint32_t>(next);
    add(s, +1);
    if (red_weight <= inst.budget_red) {
      chosen.push_back(s);
      self(self, next + 1);
      chosen.pop_back();
    }
    add(s, -1);
    self(self, next + 1);
  };
  dfs(dfs, 0);

  if (stats) stats->nodes += nodes;
  if (!best) return std::nullopt;
  return verify(inst, inc.ids_of(best->sets));
}

/// RBSC by the number of reds: for every red subset R' within the red budget
/// (by size, then lexicographically) take all sets whose reds lie inside R'
/// and check whether they cover every blue element.
inline std::optional<Solution> solve_rbsc_by_red_subsets(const Instance& inst, GuardOptions guard = {},
                                                         SolverStats* stats = nullptr) {
  if (inst.budget_lines) throw Error(ErrorCode::BoundedBudget, "red-subset enumeration is for unbounded line budgets");
  const Incidence inc = make_incidence(inst);
  std::vector<std::uint32_t> reds;
  for (std::uint32_t e = 0; e < inc.element_count(); ++e) {
    if (inc.color[e] == Color::Red) reds.push_back(e);
  }
  if (guard.enforce && reds.size() > kMaxBruteReds) {
    throw Error(ErrorCode::TooLarge, std::to_string(reds.size()) + " red elements exceed the guard of " + std::to_string(kMaxBruteReds));
  }
  if (reds.size() > 63) throw Error(ErrorCode::TooLarge, "red-subset enumeration supports at most 63 reds");

  std::vector<int> red_slot(inc.element_count(), -1);
  for (std::size_t i = 0; i < reds.size(); ++i) red_slot[reds[i]] = static_cast<int>(i);
  std::vector<std::uint64_t> set_mask(inc.set_count(), 0);
  for (std::size_t s = 0; s < inc.set_count(); ++s) {
    for (auto e : inc.reds[s]) set_mask[s] |= std::uint64_t{1} << red_slot[e];
  }

  std::uint64_t nodes = 0;
  auto try_subset = [&](std::uint64_t allowed) -> std::optional<std::vector<std::uint32_t>> {
    ++nodes;
    std::vector<std::uint32_t> family;
    std::vector<char> covered(inc.element_count(), 0);
    for (std::uint32_t s = 0; s < inc.set_count(); ++s) {
      if ((set_mask[s] & ~allowed) != 0) continue;
      family.push_back(s);
      for (auto e : inc.blues[s]) covered[e] = 1;
    }
    for (std::uint32_t e = 0; e < inc.element_count(); ++e) {
      if (inc.color[e] == Color::Blue && !covered[e]) return std::nullopt;
    }
    return family;
  };

  std::optional<std::vector<std::uint32_t>> found;
  std::vector<std::size_t> pick;
  auto combos = [&](auto&& self, std::size_t start, std::size_t remaining, std::uint64_t mask, std::uint64_t weight) -> bool {
    if (remaining == 0) {
      if (weight > inst.budget_red) return false;
      found = try_subset(mask);
      return found.has_value();
    }
    for (std::size_t i = start; i + remaining <= reds.size(); ++i) {
      std::uint64_t w = weight + inc.weight[reds[i]];
      if (w > inst.budget_red) continue;
      if (self(self, i + 1, remaining - 1, mask | (std::uint64_t{1} << i), w)) return true;
    }
    return false;
  };
  for (std::size_t size = 0; size <= reds.size() && !found; ++size) {
    if (combos(combos, 0, size, 0, 0)) break;
  }
  if (stats) stats->nodes += nodes;
  if (!found) return std::nullopt;
  return verify(inst, inc.ids_of(*found));
}

}  // namespace rbsc
