#pragma once

// Subset dynamic program for instances where every set has at most one red
// element.
//
//   W[B', r] = 0 if B' is empty, else 1 + min W[B' \ S, r] over sets S with
//              reds(S) in {{}, {r}} and S meeting B'      (r may be nil)
//   T[B', 0] = W[B', nil]
//   T[B', j] = min over r, B'' subset of B' of W[B'', r] + T[B' \ B'', j-1]
//
// T[B, j] is the fewest sets covering B while touching at most j reds.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/model.hpp"

namespace rbsc {

inline constexpr std::size_t kMaxDpBlues = 24;

class DynamicProgram {
 public:
  using Mask = std::uint32_t;
  /// Strictly larger than any family size.
  static constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();
  /// Red slot 0 is nil; slot i > 0 is the i-th red that appears in some set.
  static constexpr std::size_t kNil = 0;

  explicit DynamicProgram(const Instance& inst) : inc_(make_incidence(inst)) {
    if (!inst.budget_lines) throw Error(ErrorCode::UnboundedBudget, "dp needs a finite line budget");
    if (inst.weighted()) throw Error(ErrorCode::PreconditionViolated, "dp does not support weighted reds");
    std::vector<int> blue_bit(inc_.element_count(), -1);
    for (std::uint32_t e = 0; e < inc_.element_count(); ++e) {
      if (inc_.color[e] == Color::Blue) {
        blue_bit[e] = static_cast<int>(blue_elements_.size());
        blue_elements_.push_back(e);
      }
    }
    if (blue_elements_.size() > kMaxDpBlues) {
      throw Error(ErrorCode::TooManyBlues,
                  std::to_string(blue_elements_.size()) + " blue elements, dp supports at most " + std::to_string(kMaxDpBlues));
    }
    std::vector<int> red_slot(inc_.element_count(), -1);
    red_elements_.push_back(0);  // placeholder for nil
    for (std::uint32_t s = 0; s < inc_.set_count(); ++s) {
      if (inc_.reds[s].size() >= 2) {
        throw Error(ErrorCode::RedDegreeExceeded, "set " + std::to_string(raw(inc_.set_id[s])) + " has " +
                                                      std::to_string(inc_.reds[s].size()) + " red elements");
      }
    }
    for (std::uint32_t s = 0; s < inc_.set_count(); ++s) {
      Mask m = 0;
      for (auto e : inc_.blues[s]) m |= Mask{1} << blue_bit[e];
      set_mask_.push_back(m);
      if (inc_.reds[s].empty()) {
        set_slot_.push_back(kNil);
        continue;
      }
      auto r = inc_.reds[s].front();
      if (red_slot[r] < 0) {
        red_slot[r] = static_cast<int>(red_elements_.size());
        red_elements_.push_back(r);
      }
      set_slot_.push_back(static_cast<std::size_t>(red_slot[r]));
    }
    // Slots are numbered by first appearance; renumber by element order.
    std::vector<std::size_t> order(red_elements_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin() + 1, order.end(), [&](std::size_t a, std::size_t b) { return red_elements_[a] < red_elements_[b]; });
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    std::vector<std::uint32_t> sorted(red_elements_.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = red_elements_[order[i]];
    red_elements_ = std::move(sorted);
    for (auto& slot : set_slot_) slot = rank[slot];

    k_lines_ = *inst.budget_lines;
    k_red_ = inst.budget_red;
    w_.resize(red_elements_.size());
    w_arg_.resize(red_elements_.size());
  }

  std::size_t blue_count() const { return blue_elements_.size(); }
  std::size_t red_slots() const { return red_elements_.size(); }
  Mask full_mask() const { return blue_elements_.empty() ? 0 : static_cast<Mask>((std::uint64_t{1} << blue_elements_.size()) - 1); }
  /// Largest j worth tabulating: more steps than distinct reds never help.
  std::uint64_t j_cap() const { return std::min<std::uint64_t>(k_red_, red_elements_.size() - 1); }

  /// Lazily memoized W[mask, slot].
  std::uint32_t W(Mask mask, std::size_t slot) {
    if (mask == 0) return 0;
    auto& table = w_[slot];
    if (table.empty()) {
      table.assign(std::size_t{1} << blue_count(), kUnknown);
      w_arg_[slot].assign(std::size_t{1} << blue_count(), kNoSet);
    }
    if (table[mask] != kUnknown) return table[mask];
    std::uint32_t best = kInfinity;
    std::uint32_t arg = kNoSet;
    for (std::uint32_t s = 0; s < set_mask_.size(); ++s) {  // ascending SetId
      if (!eligible(s, slot) || (set_mask_[s] & mask) == 0) continue;
      std::uint32_t rest = W(mask & ~set_mask_[s], slot);
      if (rest != kInfinity && rest + 1 < best) {
        best = rest + 1;
        arg = s;
      }
    }
    table[mask] = best;
    w_arg_[slot][mask] = arg;
    return best;
  }

  /// Bottom-up W over every mask, computed independently of the lazy path.
  std::vector<std::uint32_t> tabulate_W(std::size_t slot) const {
    std::vector<std::uint32_t> table(std::size_t{1} << blue_count(), kInfinity);
    table[0] = 0;
    for (std::size_t m = 1; m < table.size(); ++m) {
      const Mask mask = static_cast<Mask>(m);
      for (std::uint32_t s = 0; s < set_mask_.size(); ++s) {
        if (!eligible(s, slot) || (set_mask_[s] & mask) == 0) continue;
        auto rest = table[mask & ~set_mask_[s]];
        if (rest != kInfinity) table[mask] = std::min(table[mask], rest + 1);
      }
    }
    return table;
  }

  /// T[mask, j]; j beyond j_cap() reads the j_cap() row.
  std::uint32_t T(Mask mask, std::uint64_t j) {
    build_T();
    return t_[std::min(j, j_cap())][mask];
  }

  /// The optimal family for T[mask, j] as set indices, ascending.
  std::vector<std::uint32_t> witness(Mask mask, std::uint64_t j) {
    build_T();
    j = std::min(j, j_cap());
    std::vector<std::uint32_t> out;
    if (t_[j][mask] == kInfinity) return out;
    while (j > 0) {
      auto [sub, slot] = t_arg_[j][mask];
      collect_W(sub, slot, out);
      mask &= ~sub;
      --j;
    }
    collect_W(mask, kNil, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  const Incidence& incidence() const { return inc_; }
  std::uint64_t cells() const { return cells_; }

 private:
  static constexpr std::uint32_t kUnknown = kInfinity - 1;
  static constexpr std::uint32_t kNoSet = std::numeric_limits<std::uint32_t>::max();

  bool eligible(std::uint32_t s, std::size_t slot) const { return set_slot_[s] == kNil || set_slot_[s] == slot; }

  void collect_W(Mask mask, std::size_t slot, std::vector<std::uint32_t>& out) {
    while (mask != 0) {
      W(mask, slot);
      auto s = w_arg_[slot][mask];
      out.push_back(s);
      mask &= ~set_mask_[s];
    }
  }

  void build_T() {
    if (!t_.empty()) return;
    const std::size_t masks = std::size_t{1} << blue_count();
    const std::uint64_t rows = j_cap() + 1;
    t_.assign(rows, std::vector<std::uint32_t>(masks, kInfinity));
    t_arg_.assign(rows, std::vector<std::pair<Mask, std::size_t>>(masks, {0, kNil}));
    for (std::size_t m = 0; m < masks; ++m) t_[0][m] = W(static_cast<Mask>(m), kNil);
    cells_ += masks;
    // min over r of W[sub, r], smallest slot on ties.
    std::vector<std::uint32_t> w_min(rows > 1 ? masks : 0, kInfinity);
    std::vector<std::size_t> w_min_slot(w_min.size(), kNil);
    for (std::size_t m = 0; m < w_min.size(); ++m) {
      for (std::size_t slot = 0; slot < red_slots(); ++slot) {
        std::uint32_t w = W(static_cast<Mask>(m), slot);
        if (w < w_min[m]) {
          w_min[m] = w;
          w_min_slot[m] = slot;
        }
      }
    }
    for (std::uint64_t j = 1; j < rows; ++j) {
      for (std::size_t m = 0; m < masks; ++m) {
        const Mask mask = static_cast<Mask>(m);
        std::uint32_t best = kInfinity;
        std::pair<Mask, std::size_t> arg{0, kNil};
        // Submasks in increasing order, starting from the empty one.
        Mask sub = 0;
        for (;;) {
          const std::uint32_t rest = t_[j - 1][mask & ~sub];
          const std::uint32_t w = w_min[sub];
          if (rest != kInfinity && w != kInfinity && w + rest < best) {
            best = w + rest;
            arg = {sub, w_min_slot[sub]};
          }
          if (sub == mask) break;
          sub = (sub - mask) & mask;
        }
        t_[j][m] = best;
        t_arg_[j][m] = arg;
        ++cells_;
      }
    }
  }

  Incidence inc_;
  std::vector<std::uint32_t> blue_elements_;
  std::vector<std::uint32_t> red_elements_;
  std::vector<Mask> set_mask_;
  std::vector<std::size_t> set_slot_;
  std::uint64_t k_lines_ = 0;
  std::uint64_t k_red_ = 0;
  std::vector<std::vector<std::uint32_t>> w_;
  std::vector<std::vector<std::uint32_t>> w_arg_;
  std::vector<std::vector<std::uint32_t>> t_;
  std::vector<std::vector<std::pair<Mask, std::size_t>>> t_arg_;
  std::uint64_t cells_ = 0;
};

/// YES iff T[B, k_red] <= k_lines; the witness comes from the stored argmins.
inline std::optional<Solution> dp_solve(const Instance& inst, SolverStats* stats = nullptr) {
  DynamicProgram dp(inst);
  const std::uint32_t best = dp.T(dp.full_mask(), inst.budget_red);
  if (stats) stats->branches += dp.cells();
  if (best == DynamicProgram::kInfinity || best > *inst.budget_lines) return std::nullopt;
  return verify(inst, dp.incidence().ids_of(dp.witness(dp.full_mask(), inst.budget_red)));
}

}  // namespace rbsc
