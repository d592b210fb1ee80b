#pragma once

// Search algorithms parameterized by k_lines + k_red.
//
// The core is the one-blue-per-set case: a minimal solution there splits
// into connected components of its intersection graph, and each component
// can be grown set by set from a fixed ordering of its blue elements, every
// new set sharing a red with the ones before it. A GoodTuple fixes the
// component structure (partition, orderings, red budgets); check_conforming
// searches for sets realizing it. solve_kl_kr reduces the general case to
// this one by guessing the sets with two or more blue elements.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/kernel.hpp"
#include "rbsc/model.hpp"

namespace rbsc {

struct GoodTuple {
  std::size_t b = 0;
  std::uint64_t p = 0;
  std::size_t s = 0;
  /// Blocks as sorted element lists, in canonical order (by smallest element).
  std::vector<std::vector<ElementId>> partition;
  /// orderings[i] is a permutation of partition[i].
  std::vector<std::vector<ElementId>> orderings;
  /// Sums to p.
  std::vector<std::uint64_t> red_budgets;

  friend bool operator==(const GoodTuple&, const GoodTuple&) = default;
  friend auto operator<=>(const GoodTuple& a, const GoodTuple& b) {
    return std::tie(a.b, a.p, a.s, a.partition, a.orderings, a.red_budgets) <=>
           std::tie(b.b, b.p, b.s, b.partition, b.orderings, b.red_budgets);
  }
};

/// What the consumer of enumerate_good_tuples wants next.
enum class TupleStep {
  Continue,
  /// Skip the remaining red budgets for the current partition and orderings.
  NextOrdering,
  Stop,
};

namespace detail {

// Restricted growth strings in lexicographic order yield each set partition
// of {0..n-1} into exactly s blocks once, blocks ordered by smallest element.
template <class Fn>
bool for_each_partition(std::size_t n, std::size_t s, Fn&& fn) {
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> bool {
    if (i == n) {
      if (used != s) return false;
      std::vector<std::vector<std::size_t>> blocks(s);
      for (std::size_t e = 0; e < n; ++e) blocks[rgs[e]].push_back(e);
      return fn(blocks);
    }
    // Not enough elements left to open the remaining blocks.
    if (n - i < s - used) return false;
    std::size_t top = std::min(used + 1, s);
    for (std::size_t c = 0; c < top; ++c) {
      rgs[i] = c;
      if (self(self, i + 1, std::max(used, c + 1))) return true;
    }
    return false;
  };
  if (s == 0 || s > n) return false;
  return rec(rec, 0, 0);
}

// Weak compositions of p into s parts, lexicographic.
template <class Fn>
bool for_each_composition(std::uint64_t p, std::size_t s, Fn&& fn) {
  std::vector<std::uint64_t> parts(s, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> bool {
    if (i + 1 == s) {
      parts[i] = left;
      return fn(parts);
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      parts[i] = v;
      if (self(self, i + 1, left - v)) return true;
    }
    return false;
  };
  return rec(rec, 0, p);
}

}  // namespace detail

/// Calls `visit` on every good tuple over `blues` (sorted ids, 1 <= b <= k_lines),
/// ordered by s, then partition, then orderings, then p, then composition.
inline void enumerate_good_tuples(std::vector<ElementId> blues, std::uint64_t k_lines, std::uint64_t k_red,
                                  const std::function<TupleStep(const GoodTuple&)>& visit) {
  std::sort(blues.begin(), blues.end());
  const std::size_t b = blues.size();
  if (b == 0 || b > k_lines) {
    throw Error(ErrorCode::PreconditionViolated, "good tuples need 1 <= b <= k_lines, got b = " + std::to_string(b));
  }
  GoodTuple t;
  t.b = b;
  bool stop = false;
  for (std::size_t s = 1; s <= b && !stop; ++s) {
    t.s = s;
    detail::for_each_partition(b, s, [&](const std::vector<std::vector<std::size_t>>& blocks) {
      t.partition.assign(s, {});
      for (std::size_t i = 0; i < s; ++i) {
        for (auto e : blocks[i]) t.partition[i].push_back(blues[e]);
      }
      t.orderings = t.partition;
      // Odometer over per-block permutations, first block slowest.
      for (;;) {
        bool skip = false;
        for (std::uint64_t p = 0; p <= k_red && !skip; ++p) {
          t.p = p;
          detail::for_each_composition(p, s, [&](const std::vector<std::uint64_t>& parts) {
            t.red_budgets = parts;
            switch (visit(t)) {
              case TupleStep::Continue:
                return false;
              case TupleStep::NextOrdering:
                skip = true;
                return true;
              case TupleStep::Stop:
                stop = true;
                return true;
            }
            return false;
          });
          if (stop) return true;
        }
        std::size_t i = s;
        while (i > 0 && !std::next_permutation(t.orderings[i - 1].begin(), t.orderings[i - 1].end())) --i;
        if (i == 0) break;
      }
      return false;
    });
  }
}

// ---------------------------------------------------------------------------
// Intersection graph

class IntersectionGraph {
 public:
  IntersectionGraph(const Instance& inst, std::vector<SetId> sets) : ids_(std::move(sets)) {
    std::vector<std::set<ElementId>> members;
    for (auto id : ids_) {
      const Set* s = inst.find_set(id);
      if (!s) throw Error(ErrorCode::UnknownSetId, "set " + std::to_string(raw(id)) + " is not in the family");
      members.emplace_back(s->members.begin(), s->members.end());
    }
    adj_.assign(ids_.size(), std::vector<bool>(ids_.size(), false));
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      for (std::size_t j = i + 1; j < ids_.size(); ++j) {
        bool meet = std::any_of(members[i].begin(), members[i].end(), [&](ElementId e) { return members[j].contains(e); });
        adj_[i][j] = adj_[j][i] = meet;
      }
    }
  }

  std::size_t size() const { return ids_.size(); }
  const std::vector<SetId>& vertices() const { return ids_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i][j]; }

  bool connected() const {
    if (ids_.empty()) return true;
    std::vector<bool> seen(ids_.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < ids_.size(); ++w) {
        if (adj_[v][w] && !seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == ids_.size();
  }

  /// True iff every prefix of the vertex order induces a connected subgraph.
  bool prefix_connected() const {
    for (std::size_t j = 1; j < ids_.size(); ++j) {
      bool linked = false;
      for (std::size_t i = 0; i < j && !linked; ++i) linked = adj_[i][j];
      if (!linked) return false;
    }
    return true;
  }

 private:
  std::vector<SetId> ids_;
  std::vector<std::vector<bool>> adj_;
};

// ---------------------------------------------------------------------------
// Conformity search

/// Per-instance index for check_conforming. Results for a block depend only on
/// its ordering and red budget, so they are memoized across tuples.
class ConformitySearch {
 public:
  explicit ConformitySearch(const Instance& inst) : inst_(&inst), inc_(make_incidence(inst)) {
    for (std::uint32_t s = 0; s < inc_.set_count(); ++s) {
      if (inc_.blues[s].size() != 1) {
        throw Error(ErrorCode::PreconditionViolated,
                    "set " + std::to_string(raw(inc_.set_id[s])) + " has " + std::to_string(inc_.blues[s].size()) +
                        " blue elements, expected exactly 1");
      }
      auto blue = inc_.blues[s].front();
      by_blue_[blue].push_back(s);
      for (auto red : inc_.reds[s]) by_pair_[{blue, red}].push_back(s);
    }
    for (std::uint32_t e = 0; e < inc_.element_count(); ++e) index_[inc_.element_id[e]] = e;
  }

  /// The union of one realizing family per block, or nullopt.
  std::optional<std::vector<SetId>> check(const GoodTuple& t, SolverStats* stats = nullptr) {
    std::vector<std::uint32_t> chosen;
    for (std::size_t i = 0; i < t.orderings.size(); ++i) {
      const auto* found = block(t.orderings[i], t.red_budgets.at(i), stats);
      if (!found) return std::nullopt;
      chosen.insert(chosen.end(), found->begin(), found->end());
    }
    std::vector<SetId> ids = inc_.ids_of(chosen);
    Solution sol = verify(*inst_, ids);
    // Blocks may share reds, which can only lower the total.
    if (!sol.all_blue_covered() || sol.red_covered > t.p) return std::nullopt;
    return ids;
  }

  /// Cheapest budget test: can this ordering succeed with budget `cap`?
  bool block_feasible(const std::vector<ElementId>& ordering, std::uint64_t cap, SolverStats* stats = nullptr) {
    return block(ordering, cap, stats) != nullptr;
  }

 private:
  using Found = std::optional<std::vector<std::uint32_t>>;

  const std::vector<std::uint32_t>* block(const std::vector<ElementId>& ordering, std::uint64_t budget, SolverStats* stats) {
    auto key = std::make_pair(ordering, budget);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(std::move(key), search(ordering, budget, stats)).first;
    return it->second ? &*it->second : nullptr;
  }

  Found search(const std::vector<ElementId>& ordering, std::uint64_t budget, SolverStats* stats) {
    std::vector<std::uint32_t> order;
    for (auto id : ordering) {
      auto it = index_.find(id);
      if (it == index_.end()) return std::nullopt;
      order.push_back(it->second);
    }
    std::vector<std::uint32_t> picked;
    std::map<std::uint32_t, int> reds;  // R'_i with multiplicity
    std::uint64_t nodes = 0;

    auto take = [&](std::uint32_t s, int delta) {
      for (auto r : inc_.reds[s]) {
        if (delta > 0) {
          ++reds[r];
        } else if (--reds[r] == 0) {
          reds.erase(r);
        }
      }
    };
    auto dfs = [&](auto&& self, std::size_t j) -> bool {
      ++nodes;
      if (j == order.size()) return true;
      std::vector<std::uint32_t> candidates;
      if (j == 0) {
        auto it = by_blue_.find(order[0]);
        if (it != by_blue_.end()) candidates = it->second;
      } else {
        for (const auto& [r, _] : reds) {
          auto it = by_pair_.find({order[j], r});
          if (it != by_pair_.end()) candidates.insert(candidates.end(), it->second.begin(), it->second.end());
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      }
      for (auto s : candidates) {
        take(s, +1);
        if (reds.size() <= budget) {
          picked.push_back(s);
          if (self(self, j + 1)) return true;
          picked.pop_back();
        }
        take(s, -1);
      }
      return false;
    };
    bool ok = dfs(dfs, 0);
    if (stats) stats->nodes += nodes;
    if (!ok) return std::nullopt;
    return picked;
  }

  const Instance* inst_;
  Incidence inc_;
  std::map<ElementId, std::uint32_t> index_;
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_blue_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> by_pair_;
  std::map<std::pair<std::vector<ElementId>, std::uint64_t>, Found> memo_;
};

inline std::optional<std::vector<SetId>> check_conforming(const Instance& inst, const GoodTuple& t) {
  ConformitySearch search(inst);
  return search.check(t);
}

namespace detail {

inline void require_unweighted(const Instance& inst, const char* who) {
  if (inst.weighted()) throw Error(ErrorCode::PreconditionViolated, std::string(who) + " does not support weighted reds");
}

inline std::vector<ElementId> blue_ids(const Instance& inst) {
  std::vector<ElementId> out;
  for (const auto& e : inst.elements) {
    if (e.is_blue()) out.push_back(e.id);
  }
  return out;
}

}  // namespace detail

/// Every set carries exactly one blue element.
inline std::optional<Solution> solve_one_blue_special(const Instance& inst, SolverStats* stats = nullptr) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "one-blue search needs a finite line budget");
  detail::require_unweighted(inst, "one-blue search");
  for (const auto& s : inst.family) {
    if (detail::profile(inst, s).blue != 1) {
      throw Error(ErrorCode::PreconditionViolated, "set " + std::to_string(raw(s.id)) + " does not have exactly one blue element");
    }
  }
  auto blues = detail::blue_ids(inst);
  if (blues.empty()) return verify(inst, {});
  if (blues.size() > *inst.budget_lines) return std::nullopt;

  ConformitySearch search(inst);
  // Covering more reds than exist is never needed.
  const std::uint64_t k_red = std::min<std::uint64_t>(inst.budget_red, inst.red_count());
  std::optional<std::vector<SetId>> found;
  std::vector<std::vector<ElementId>> current;
  enumerate_good_tuples(blues, *inst.budget_lines, k_red, [&](const GoodTuple& t) {
    if (stats) ++stats->tuples;
    // A block that fails with the whole budget fails with any share of it.
    if (current != t.orderings) {
      current = t.orderings;
      for (const auto& block : t.orderings) {
        if (!search.block_feasible(block, k_red, stats)) return TupleStep::NextOrdering;
      }
    }
    found = search.check(t, stats);
    return found ? TupleStep::Stop : TupleStep::Continue;
  });
  if (!found) return std::nullopt;
  return verify(inst, *found);
}

/// Gen-RBSC on a linear set system, FPT in k_lines + k_red.
inline std::optional<Solution> solve_kl_kr(const Instance& inst, SolverStats* stats = nullptr) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "solve_kl_kr needs a finite line budget");
  detail::require_unweighted(inst, "solve_kl_kr");
  KernelResult kr = kernelize_kl_kr(inst);
  if (kr.is_no()) return std::nullopt;
  const Instance& kernel = kr.kernel;
  const Incidence inc = make_incidence(kernel);
  const std::uint64_t k_lines = *kernel.budget_lines;
  const std::uint64_t k_red = kernel.budget_red;

  std::vector<std::uint32_t> multi;  // F'': sets with two or more blues
  for (std::uint32_t s = 0; s < inc.set_count(); ++s) {
    if (inc.blues[s].size() >= 2) multi.push_back(s);
  }

  std::optional<std::vector<SetId>> answer;
  std::vector<std::uint32_t> f2;
  std::vector<int> red_hits(inc.element_count(), 0);
  std::uint64_t red_weight = 0;

  auto try_branch = [&]() -> bool {
    if (stats) ++stats->branches;
    std::set<ElementId> covered;
    std::set<ElementId> covered_blue;
    for (auto s : f2) {
      for (auto e : inc.blues[s]) {
        covered_blue.insert(inc.element_id[e]);
        covered.insert(inc.element_id[e]);
      }
      for (auto e : inc.reds[s]) covered.insert(inc.element_id[e]);
    }
    Instance branch = kernel;
    std::vector<SetId> drop;
    for (auto s : multi) drop.push_back(inc.set_id[s]);
    for (const auto& set : kernel.family) {
      if (std::any_of(set.members.begin(), set.members.end(), [&](ElementId m) { return covered_blue.contains(m); })) {
        drop.push_back(set.id);
      }
    }
    remove_sets(branch, drop);
    delete_elements(branch, {covered.begin(), covered.end()});
    std::erase_if(branch.family, [&](const Set& set) { return detail::profile(branch, set).blue == 0; });
    branch.budget_lines = k_lines - f2.size();
    branch.budget_red = k_red - red_weight;
    auto f1 = solve_one_blue_special(branch, stats);
    if (!f1) return false;
    std::vector<SetId> all = kr.forced;
    for (auto s : f2) all.push_back(inc.set_id[s]);
    all.insert(all.end(), f1->chosen.begin(), f1->chosen.end());
    answer = std::move(all);
    return true;
  };

  // F2 candidates by size, then lexicographically; red weight pruned on the way.
  auto combos = [&](auto&& self, std::size_t start, std::size_t remaining) -> bool {
    if (remaining == 0) return try_branch();
    for (std::size_t i = start; i + remaining <= multi.size(); ++i) {
      auto s = multi[i];
      std::uint64_t added = 0;
      for (auto e : inc.reds[s]) {
        if (red_hits[e]++ == 0) added += inc.weight[e];
      }
      red_weight += added;
      bool done = false;
      if (red_weight <= k_red) {
        f2.push_back(s);
        done = self(self, i + 1, remaining - 1);
        f2.pop_back();
      }
      red_weight -= added;
      for (auto e : inc.reds[s]) --red_hits[e];
      if (done) return true;
    }
    return false;
  };
  const std::size_t max_f2 = std::min<std::uint64_t>(k_lines, multi.size());
  for (std::size_t size = 0; size <= max_f2; ++size) {
    if (combos(combos, 0, size)) break;
  }
  if (!answer) return std::nullopt;
  return verify(inst, *answer, kr.forced);
}

/// Every set has at most d red elements, so k_red can be capped at d * k_lines.
inline std::optional<Solution> solve_bounded_red(const Instance& inst, std::uint64_t d, SolverStats* stats = nullptr) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "solve_bounded_red needs a finite line budget");
  for (const auto& s : inst.family) {
    auto p = detail::profile(inst, s);
    if (p.red > d) {
      throw Error(ErrorCode::DegreeExceeded,
                  "set " + std::to_string(raw(s.id)) + " has " + std::to_string(p.red) + " red elements, more than d = " + std::to_string(d));
    }
  }
  Instance capped = inst;
  const std::uint64_t kl = *inst.budget_lines;
  if (d == 0 || kl <= inst.budget_red / d) capped.budget_red = std::min(inst.budget_red, d * kl);
  auto sol = solve_kl_kr(capped, stats);
  if (!sol) return std::nullopt;
  return verify(inst, sol->chosen, sol->forced);
}

/// Every set has two or more blue elements, or none.
inline std::optional<Solution> solve_two_blue_special(const Instance& inst, SolverStats* stats = nullptr) {
  if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "solve_two_blue_special needs a finite line budget");
  for (const auto& s : inst.family) {
    if (detail::profile(inst, s).blue == 1) {
      throw Error(ErrorCode::PreconditionViolated, "set " + std::to_string(raw(s.id)) + " has exactly one blue element");
    }
  }
  KernelResult kr = kernelize_kl_kr(inst);
  if (kr.is_no()) return std::nullopt;
  const Instance& kernel = kr.kernel;
  const Incidence inc = make_incidence(kernel);
  const std::size_t limit = std::min<std::uint64_t>(*kernel.budget_lines, inc.set_count());
  const std::size_t blue_total = kernel.blue_count();

  std::vector<int> hits(inc.element_count(), 0);
  std::size_t blue_covered = 0;
  std::uint64_t red_weight = 0;
  std::vector<std::uint32_t> chosen;
  std::uint64_t nodes = 0;

  auto toggle = [&](std::uint32_t s, int delta) {
    for (auto e : inc.blues[s]) {
      if (delta > 0 && hits[e]++ == 0) ++blue_covered;
      if (delta < 0 && --hits[e] == 0) --blue_covered;
    }
    for (auto e : inc.reds[s]) {
      if (delta > 0 && hits[e]++ == 0) red_weight += inc.weight[e];
      if (delta < 0 && --hits[e] == 0) red_weight -= inc.weight[e];
    }
  };
  // Subfamilies of exactly `size` sets, lexicographic.
  auto search = [&](auto&& self, std::size_t start, std::size_t remaining) -> bool {
    ++nodes;
    if (remaining == 0) return blue_covered == blue_total;
    for (std::size_t i = start; i + remaining <= inc.set_count(); ++i) {
      auto s = static_cast<std::uint32_t>(i);
      toggle(s, +1);
      if (red_weight <= kernel.budget_red) {
        chosen.push_back(s);
        if (self(self, i + 1, remaining - 1)) return true;
        chosen.pop_back();
      }
      toggle(s, -1);
    }
    return false;
  };
  bool found = false;
  for (std::size_t size = 0; size <= limit && !found; ++size) found = search(search, 0, size);
  if (stats) stats->nodes += nodes;
  if (!found) return std::nullopt;
  std::vector<SetId> all = kr.forced;
  auto ids = inc.ids_of(chosen);
  all.insert(all.end(), ids.begin(), ids.end());
  return verify(inst, all, kr.forced);
}

/// RBSC where every set has no red element or at least two.
inline std::optional<Solution> solve_rbsc_kr_two_red(const Instance& inst, SolverStats* stats = nullptr) {
  if (inst.budget_lines) throw Error(ErrorCode::BoundedBudget, "solve_rbsc_kr_two_red needs an unbounded line budget");
  detail::require_unweighted(inst, "solve_rbsc_kr_two_red");
  for (const auto& s : inst.family) {
    if (detail::profile(inst, s).red == 1) {
      throw Error(ErrorCode::PreconditionViolated, "set " + std::to_string(raw(s.id)) + " has exactly one red element");
    }
  }
  KernelResult kr = reduce_rbsc(inst);
  if (kr.is_no()) return std::nullopt;
  Instance bounded = kr.kernel;
  // Distinct sets of a linear system cannot share a pair of reds.
  bounded.budget_lines = bounded.budget_red * (bounded.budget_red - (bounded.budget_red ? 1 : 0)) / 2;
  auto sol = solve_kl_kr(bounded, stats);
  if (!sol) return std::nullopt;
  std::vector<SetId> all = kr.forced;
  all.insert(all.end(), sol->chosen.begin(), sol->chosen.end());
  return verify(inst, all, kr.forced);
}

}  // namespace rbsc
