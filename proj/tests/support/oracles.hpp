#pragma once

// Reference implementations used only by tests. They share no code with the
// solvers they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rbsc/fpt.hpp"
#include "rbsc/io.hpp"
#include "rbsc/model.hpp"
#include "rbsc/source_problems.hpp"

namespace rbsc::testing {

/// Some subfamily of at most k sets covers [1, n].
inline bool set_cover_brute(const SetCoverInstance& sc) {
  const std::size_t m = sc.sets.size();
  const std::uint64_t full = (std::uint64_t{1} << sc.n) - 1;
  std::vector<std::uint64_t> masks;
  for (const auto& s : sc.sets) {
    std::uint64_t mask = 0;
    for (auto e : s) mask |= std::uint64_t{1} << (e - 1);
    masks.push_back(mask);
  }
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << m); ++pick) {
    if (static_cast<std::uint64_t>(__builtin_popcountll(pick)) > sc.k) continue;
    std::uint64_t cover = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (pick >> i & 1) cover |= masks[i];
    }
    if (cover == full) return true;
  }
  return false;
}

/// One vertex per class, pairwise adjacent.
inline bool multicolored_clique_brute(const MulticoloredGraph& g) {
  std::vector<std::vector<std::uint32_t>> classes;
  for (std::uint32_t c = 1; c <= g.classes; ++c) classes.push_back(g.class_members(c));
  std::vector<std::uint32_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == classes.size()) return true;
    for (auto v : classes[i]) {
      bool ok = std::all_of(pick.begin(), pick.end(), [&](std::uint32_t u) { return g.adjacent(u, v); });
      if (!ok) continue;
      pick.push_back(v);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

/// Every good tuple over `blues`, built from all label assignments and then
/// canonicalized.
inline std::set<GoodTuple> good_tuples_brute(const std::vector<ElementId>& blues, std::uint64_t k_lines, std::uint64_t k_red) {
  std::set<GoodTuple> out;
  const std::size_t b = blues.size();
  std::set<std::vector<std::vector<ElementId>>> partitions;
  std::vector<std::size_t> label(b, 0);
  for (;;) {
    std::vector<std::vector<ElementId>> blocks(b);
    for (std::size_t i = 0; i < b; ++i) blocks[label[i]].push_back(blues[i]);
    std::erase_if(blocks, [](const auto& blk) { return blk.empty(); });
    for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
    std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
    if (blocks.size() <= k_lines) partitions.insert(blocks);
    std::size_t i = 0;
    while (i < b && ++label[i] == b) label[i++] = 0;
    if (i == b) break;
  }
  for (const auto& part : partitions) {
    const std::size_t s = part.size();
    std::vector<std::vector<std::vector<ElementId>>> perms(s);
    for (std::size_t i = 0; i < s; ++i) {
      auto v = part[i];
      do perms[i].push_back(v);
      while (std::next_permutation(v.begin(), v.end()));
    }
    std::function<void(std::size_t, std::vector<std::vector<ElementId>>&)> orders = [&](std::size_t i, auto& acc) {
      if (i == s) {
        for (std::uint64_t p = 0; p <= k_red; ++p) {
          std::vector<std::uint64_t> budget(s, 0);
          std::function<void(std::size_t)> fill = [&](std::size_t j) {
            if (j == s) {
              std::uint64_t sum = 0;
              for (auto x : budget) sum += x;
              if (sum == p) out.insert(GoodTuple{b, p, s, part, acc, budget});
              return;
            }
            for (std::uint64_t x = 0; x <= p; ++x) {
              budget[j] = x;
              fill(j + 1);
            }
          };
          fill(0);
        }
        return;
      }
      for (const auto& perm : perms[i]) {
        acc.push_back(perm);
        orders(i + 1, acc);
        acc.pop_back();
      }
    };
    std::vector<std::vector<ElementId>> acc;
    orders(0, acc);
  }
  return out;
}

/// Plain exhaustive decision over every subfamily, with no pruning. Used to
/// cross-check the pruned brute force on tiny inputs.
inline std::optional<std::size_t> min_feasible_size(const Instance& inst) {
  const std::size_t m = inst.family.size();
  std::optional<std::size_t> best;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << m); ++pick) {
    std::vector<SetId> ids;
    for (std::size_t i = 0; i < m; ++i) {
      if (pick >> i & 1) ids.push_back(inst.family[i].id);
    }
    if (verify(inst, ids).feasible() && (!best || ids.size() < *best)) best = ids.size();
  }
  return best;
}

inline Instance tiny(std::string_view text) { return parse_instance(text); }

/// L1 = {b1, r1, b2}, L2 = {b1, b3}, budgets (2, 1).
inline constexpr std::string_view kTinyText = R"(rbsc 1
mode abstract
budget_lines 2
budget_red 1
point 1 B
point 2 R
point 3 B
point 4 B
set 1 : 1 2 3
set 2 : 1 4
)";

}  // namespace rbsc::testing
