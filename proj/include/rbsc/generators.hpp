#pragma once

// Instance factories: reductions from Set Cover and Multicolored Clique, and
// seeded random instances for property tests.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbsc/error.hpp"
#include "rbsc/geometry.hpp"
#include "rbsc/model.hpp"
#include "rbsc/source_problems.hpp"

namespace rbsc {

namespace detail {

inline Element make_point(std::uint32_t id, Color c, PlanePoint p) {
  Element e;
  e.id = ElementId{id};
  e.color = c;
  e.point = std::move(p);
  return e;
}

inline PlanePoint parabola(std::uint32_t t) {
  Rational x(t);
  return {x, x * x};
}

}  // namespace detail

/// Elements become blue points on the parabola, sets become red points
/// further along it, and each incidence becomes a two-point line.
inline Instance gen_setcover_lines(const SetCoverInstance& sc) {
  sc.check();
  Instance inst;
  inst.mode = Mode::Geometric;
  const std::uint32_t n = sc.n;
  const auto m = static_cast<std::uint32_t>(sc.sets.size());
  for (std::uint32_t t = 1; t <= n; ++t) inst.elements.push_back(detail::make_point(t, Color::Blue, detail::parabola(t)));
  for (std::uint32_t j = 1; j <= m; ++j) inst.elements.push_back(detail::make_point(n + j, Color::Red, detail::parabola(n + j)));
  std::uint32_t next = 1;
  for (std::uint32_t j = 1; j <= m; ++j) {
    std::set<std::uint32_t> members(sc.sets[j - 1].begin(), sc.sets[j - 1].end());
    for (auto u : members) inst.family.push_back({SetId{next++}, {ElementId{u}, ElementId{n + j}}});
  }
  inst.budget_lines = n;
  inst.budget_red = sc.k;
  return canonicalize(std::move(inst));
}

/// Interior parameters 1/2, 1/3, 2/3, 1/4, 3/4, ... in reduced form.
inline std::vector<Rational> interior_parameters(std::size_t count) {
  std::vector<Rational> out;
  for (std::uint32_t q = 2; out.size() < count; ++q) {
    for (std::uint32_t a = 1; a < q && out.size() < count; ++a) {
      if (std::gcd(a, q) == 1) out.push_back(make_rational(a, q));
    }
  }
  return out;
}

inline constexpr std::size_t kPlacementAttempts = 64;

/// gen_setcover_lines plus one private red point per line; no line budget.
inline Instance gen_setcover_uniqred_lines(const SetCoverInstance& sc) {
  Instance inst = gen_setcover_lines(sc);
  std::vector<LineEquation> lines;
  std::vector<std::pair<PlanePoint, PlanePoint>> ends;
  for (const auto& s : inst.family) {
    const auto& p = *inst.find_element(s.members[0])->point;
    const auto& q = *inst.find_element(s.members[1])->point;
    lines.push_back(canonical_line(p, q));
    ends.emplace_back(p, q);
  }
  std::set<PlanePoint> taken;
  for (const auto& e : inst.elements) taken.insert(*e.point);
  const auto params = interior_parameters(kPlacementAttempts);
  auto next_id = static_cast<std::uint32_t>(sc.n + sc.sets.size() + 1);
  for (std::size_t i = 0; i < inst.family.size(); ++i) {
    const auto& [p, q] = ends[i];
    std::optional<PlanePoint> placed;
    for (const auto& lambda : params) {
      PlanePoint c{p.x + lambda * (q.x - p.x), p.y + lambda * (q.y - p.y)};
      if (taken.contains(c)) continue;
      bool clash = false;
      for (std::size_t j = 0; j < lines.size() && !clash; ++j) clash = j != i && lines[j].contains(c);
      if (clash) continue;
      placed = std::move(c);
      break;
    }
    if (!placed) {
      throw Error(ErrorCode::PlacementExhausted,
                  "no free interior point on line " + std::to_string(raw(inst.family[i].id)) + " after " +
                      std::to_string(kPlacementAttempts) + " attempts");
    }
    taken.insert(*placed);
    inst.elements.push_back(detail::make_point(next_id, Color::Red, *placed));
    inst.family[i].members.push_back(ElementId{next_id});
    ++next_id;
  }
  inst.budget_lines = std::nullopt;
  inst.budget_red = sc.k + sc.n;
  return canonicalize(std::move(inst));
}

/// Lines reduction from Multicolored Clique on a d-regular graph. Every
/// vertex u of class i gets a near-horizontal line through (0, i) and a
/// near-vertical line through (i, 0); edges and vertices become red
/// intersection points.
inline Instance gen_mcc_lines(const MulticoloredGraph& g, std::uint64_t d) {
  const std::uint32_t k = g.classes;
  if (k == 0) throw Error(ErrorCode::PreconditionViolated, "graph has no color classes");
  std::vector<std::vector<std::uint32_t>> members(k + 1);
  for (std::uint32_t i = 1; i <= k; ++i) {
    members[i] = g.class_members(i);
    if (members[i].empty()) throw Error(ErrorCode::PreconditionViolated, "class " + std::to_string(i) + " is empty");
  }
  auto deg = g.regular_degree();
  if (!deg || *deg != d) {
    throw Error(ErrorCode::NotRegular, deg ? "graph is " + std::to_string(*deg) + "-regular, not " + std::to_string(d) + "-regular"
                                           : "graph is not regular");
  }

  // Offsets strictly inside (i - 1, i - 1/2), distinct within a class.
  std::map<std::uint32_t, Rational> offset;
  std::map<std::uint32_t, std::uint32_t> class_of;
  for (std::uint32_t i = 1; i <= k; ++i) {
    const auto ni = static_cast<std::uint32_t>(members[i].size());
    for (std::uint32_t idx = 0; idx < ni; ++idx) {
      offset[members[i][idx]] = Rational(i - 1) + make_rational(idx + 1, 2 * (ni + 1));
      class_of[members[i][idx]] = i;
    }
  }

  Instance inst;
  inst.mode = Mode::Geometric;
  for (std::uint32_t i = 1; i <= k; ++i) inst.elements.push_back(detail::make_point(i, Color::Blue, {Rational(0), Rational(i)}));
  for (std::uint32_t i = 1; i <= k; ++i) inst.elements.push_back(detail::make_point(k + i, Color::Blue, {Rational(i), Rational(0)}));

  const Rational kk(k);
  std::map<std::uint32_t, LineEquation> horizontal, vertical;
  for (const auto& v : g.vertices) {
    Rational i(class_of[v.id]);
    horizontal.emplace(v.id, canonical_line({Rational(0), i}, {kk, offset[v.id]}));
    vertical.emplace(v.id, canonical_line({i, Rational(0)}, {offset[v.id], kk}));
  }

  struct RedSource {
    const LineEquation* a;
    const LineEquation* b;
    PlanePoint at;
  };
  std::vector<RedSource> reds;
  auto add_red = [&](std::uint32_t u, std::uint32_t v) {
    auto p = intersect(horizontal.at(u), vertical.at(v));
    if (!p) throw Error(ErrorCode::GeometryAudit, "lines of vertices " + std::to_string(u) + " and " + std::to_string(v) + " are parallel");
    reds.push_back({&horizontal.at(u), &vertical.at(v), *p});
  };
  for (const auto& v : g.vertices) add_red(v.id, v.id);
  for (auto [u, v] : g.edges) {
    add_red(u, v);
    add_red(v, u);
  }
  std::uint32_t next = 2 * k + 1;
  for (const auto& r : reds) inst.elements.push_back(detail::make_point(next++, Color::Red, r.at));

  // Audit: the construction has no accidental incidences.
  std::vector<const LineEquation*> all_lines;
  for (const auto& [_, l] : horizontal) all_lines.push_back(&l);
  for (const auto& [_, l] : vertical) all_lines.push_back(&l);
  std::set<PlanePoint> seen;
  for (const auto& e : inst.elements) {
    if (!seen.insert(*e.point).second) throw Error(ErrorCode::GeometryAudit, "two constructed points coincide at " + [&] {
      std::ostringstream os;
      os << *e.point;
      return os.str();
    }());
  }
  for (const auto& r : reds) {
    for (const auto* l : all_lines) {
      bool on = l->contains(r.at);
      bool defining = l == r.a || l == r.b;
      if (on != defining) throw Error(ErrorCode::GeometryAudit, "red point lies on a line other than its two defining lines");
    }
  }
  std::uint32_t set_id = 1;
  for (const auto* l : all_lines) {
    Set s{SetId{set_id++}, {}};
    std::size_t red_on = 0, blue_on = 0;
    for (const auto& e : inst.elements) {
      if (!l->contains(*e.point)) continue;
      s.members.push_back(e.id);
      (e.is_red() ? red_on : blue_on)++;
    }
    if (red_on != d + 1 || blue_on != 1) {
      throw Error(ErrorCode::GeometryAudit, "line carries " + std::to_string(red_on) + " red and " + std::to_string(blue_on) +
                                                " blue points, expected " + std::to_string(d + 1) + " and 1");
    }
    inst.family.push_back(std::move(s));
  }
  inst.budget_lines = 2 * std::uint64_t{k};
  const std::uint64_t gross = 2 * (d + 1) * k;
  const std::uint64_t overlap = std::uint64_t{k} * k;
  inst.budget_red = gross > overlap ? gross - overlap : 0;
  return canonicalize(std::move(inst));
}

/// Abstract reduction from Multicolored Clique: a blue element per pair of
/// classes, a red element per vertex, a set {b_ij, r_u, r_v} per edge.
inline Instance gen_mcc_setsystem(const MulticoloredGraph& g) {
  const std::uint32_t k = g.classes;
  if (k == 0) throw Error(ErrorCode::PreconditionViolated, "graph has no color classes");
  for (std::uint32_t i = 1; i <= k; ++i) {
    if (g.class_members(i).empty()) throw Error(ErrorCode::PreconditionViolated, "class " + std::to_string(i) + " is empty");
  }
  Instance inst;
  inst.mode = Mode::Abstract;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pair_id;
  std::uint32_t next = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t j = i + 1; j <= k; ++j) {
      pair_id[{i, j}] = next;
      inst.elements.push_back({ElementId{next++}, Color::Blue, std::nullopt, 1});
    }
  }
  std::map<std::uint32_t, std::uint32_t> red_id;
  for (const auto& v : g.vertices) {
    red_id[v.id] = next;
    inst.elements.push_back({ElementId{next++}, Color::Red, std::nullopt, 1});
  }
  std::uint32_t set_id = 1;
  for (auto [u, v] : g.edges) {
    auto cu = g.find(u)->color;
    auto cv = g.find(v)->color;
    auto key = std::minmax(cu, cv);
    inst.family.push_back({SetId{set_id++}, {ElementId{pair_id.at({key.first, key.second})}, ElementId{red_id[u]}, ElementId{red_id[v]}}});
  }
  inst.budget_lines = std::uint64_t{k} * (k - 1) / 2;
  inst.budget_red = k;
  return canonicalize(std::move(inst));
}

// ---------------------------------------------------------------------------
// Random instances

/// Seeded generator whose draws do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return hi <= lo ? lo : lo + below(hi - lo + 1); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class SetFilter {
  None,
  OneBlue,        // exactly one blue element
  TwoBlueOrNone,  // zero or at least two blue elements
  AtMostOneRed,
  ZeroOrTwoRed,   // zero or at least two red elements
  BoundedRed,     // at most Profile::red_degree red elements
};

struct Profile {
  std::string name;
  Mode mode = Mode::Geometric;
  std::uint32_t min_blue = 2, max_blue = 6;
  std::uint32_t min_red = 1, max_red = 4;
  std::uint32_t max_sets = 12;
  /// Geometric: coordinates are a/den with den in {1, 2} and 0 <= a/den <= grid.
  std::uint32_t grid = 3;
  std::uint64_t min_lines = 1, max_lines = 4;
  bool unbounded_lines = false;
  std::uint64_t max_red_budget = 5;
  SetFilter filter = SetFilter::None;
  std::uint32_t red_degree = 2;
  /// Abstract only.
  std::uint32_t max_set_size = 4;
  bool linear = true;
  /// Drop blue elements that no chosen set covers.
  bool prune_uncovered_blue = true;
};

inline bool passes(const Profile& prof, std::size_t blue, std::size_t red) {
  switch (prof.filter) {
    case SetFilter::None:
      return true;
    case SetFilter::OneBlue:
      return blue == 1;
    case SetFilter::TwoBlueOrNone:
      return blue != 1;
    case SetFilter::AtMostOneRed:
      return red <= 1;
    case SetFilter::ZeroOrTwoRed:
      return red != 1;
    case SetFilter::BoundedRed:
      return red <= prof.red_degree;
  }
  return true;
}

inline std::vector<std::string> profile_names() {
  return {"geometric", "one-blue", "two-blue", "one-red", "bounded-red", "rbsc", "rbsc-two-red", "abstract"};
}

inline Profile named_profile(std::string_view name) {
  Profile p;
  p.name = std::string(name);
  if (name == "geometric") return p;
  if (name == "one-blue") {
    p.filter = SetFilter::OneBlue;
    return p;
  }
  if (name == "two-blue") {
    p.filter = SetFilter::TwoBlueOrNone;
    p.min_blue = 3;
    p.max_blue = 7;
    p.max_red = 3;
    return p;
  }
  if (name == "one-red") {
    p.mode = Mode::Abstract;
    p.filter = SetFilter::AtMostOneRed;
    p.min_blue = 3;
    p.max_blue = 12;
    p.min_red = 0;
    p.max_red = 6;
    p.max_sets = 16;
    p.max_lines = 6;
    p.linear = false;
    return p;
  }
  if (name == "bounded-red") {
    p.filter = SetFilter::BoundedRed;
    p.red_degree = 2;
    p.max_red = 5;
    p.min_blue = 2;
    p.max_blue = 5;
    return p;
  }
  if (name == "rbsc") {
    p.unbounded_lines = true;
    return p;
  }
  if (name == "rbsc-two-red") {
    p.unbounded_lines = true;
    p.filter = SetFilter::ZeroOrTwoRed;
    p.max_red = 5;
    p.min_red = 2;
    p.max_blue = 5;
    p.max_red_budget = 4;
    return p;
  }
  if (name == "abstract") {
    p.mode = Mode::Abstract;
    p.min_blue = 3;
    p.max_blue = 9;
    p.min_red = 1;
    p.max_red = 6;
    return p;
  }
  throw Error(ErrorCode::Semantic, "unknown profile '" + std::string(name) + "'");
}

inline constexpr std::size_t kGeneratorAttempts = 200;

namespace detail {

inline void finish_random(Instance& inst, const Profile& prof, Rng& rng) {
  if (prof.prune_uncovered_blue) {
    std::set<ElementId> covered;
    for (const auto& s : inst.family) covered.insert(s.members.begin(), s.members.end());
    std::erase_if(inst.elements, [&](const Element& e) { return e.is_blue() && !covered.contains(e.id); });
  }
  if (prof.unbounded_lines) {
    inst.budget_lines = std::nullopt;
  } else {
    inst.budget_lines = rng.between(prof.min_lines, prof.max_lines);
  }
  inst.budget_red = rng.between(0, prof.max_red_budget);
}

inline std::optional<Instance> try_geometric(const Profile& prof, Rng& rng) {
  const auto nb = rng.between(prof.min_blue, prof.max_blue);
  const auto nr = rng.between(prof.min_red, prof.max_red);
  std::set<PlanePoint> chosen;
  std::vector<PlanePoint> points;
  while (points.size() < nb + nr) {
    auto coord = [&] {
      std::uint64_t den = rng.between(1, 2);
      return make_rational(static_cast<long long>(rng.between(0, prof.grid * den)), static_cast<long long>(den));
    };
    PlanePoint p{coord(), coord()};
    if (chosen.insert(p).second) points.push_back(std::move(p));
  }
  std::sort(points.begin(), points.end());
  std::vector<Color> colors(points.size(), Color::Red);
  std::fill(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(nb), Color::Blue);
  rng.shuffle(colors);

  auto family = maximal_collinear_family(points);
  std::vector<std::vector<std::size_t>> candidates;
  for (const auto& [line, idx] : family) {
    std::size_t blue = 0;
    for (auto i : idx) blue += colors[i] == Color::Blue;
    if (passes(prof, blue, idx.size() - blue)) candidates.push_back(idx);
  }
  if (candidates.empty()) return std::nullopt;
  rng.shuffle(candidates);
  candidates.resize(rng.between(1, std::min<std::size_t>(prof.max_sets, candidates.size())));
  std::sort(candidates.begin(), candidates.end());

  Instance inst;
  inst.mode = Mode::Geometric;
  for (std::size_t i = 0; i < points.size(); ++i) inst.elements.push_back(make_point(static_cast<std::uint32_t>(i + 1), colors[i], points[i]));
  std::uint32_t id = 1;
  for (const auto& idx : candidates) {
    Set s{SetId{id++}, {}};
    for (auto i : idx) s.members.push_back(ElementId{static_cast<std::uint32_t>(i + 1)});
    inst.family.push_back(std::move(s));
  }
  finish_random(inst, prof, rng);
  return canonicalize(std::move(inst));
}

inline std::optional<Instance> try_abstract(const Profile& prof, Rng& rng) {
  const auto nb = static_cast<std::uint32_t>(rng.between(prof.min_blue, prof.max_blue));
  const auto nr = static_cast<std::uint32_t>(rng.between(prof.min_red, prof.max_red));
  const std::uint32_t n = nb + nr;
  if (n == 0) return std::nullopt;
  Instance inst;
  inst.mode = Mode::Abstract;
  for (std::uint32_t i = 1; i <= n; ++i) inst.elements.push_back({ElementId{i}, i <= nb ? Color::Blue : Color::Red, std::nullopt, 1});

  const auto target = rng.between(1, prof.max_sets);
  std::set<std::vector<ElementId>> seen;
  std::vector<std::vector<ElementId>> sets;
  for (std::size_t attempt = 0; attempt < 20 * target && sets.size() < target; ++attempt) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    rng.shuffle(pool);
    auto size = rng.between(1, std::min<std::uint64_t>(prof.max_set_size, n));
    std::vector<ElementId> members;
    std::size_t blue = 0;
    for (std::size_t i = 0; i < size; ++i) {
      members.push_back(ElementId{pool[i]});
      blue += pool[i] <= nb;
    }
    std::sort(members.begin(), members.end());
    if (!passes(prof, blue, members.size() - blue) || seen.contains(members)) continue;
    if (prof.linear) {
      bool ok = std::all_of(sets.begin(), sets.end(), [&](const std::vector<ElementId>& other) {
        std::vector<ElementId> common;
        std::set_intersection(members.begin(), members.end(), other.begin(), other.end(), std::back_inserter(common));
        return common.size() <= 1;
      });
      if (!ok) continue;
    }
    seen.insert(members);
    sets.push_back(std::move(members));
  }
  if (sets.empty()) return std::nullopt;
  std::uint32_t id = 1;
  for (auto& m : sets) inst.family.push_back({SetId{id++}, std::move(m)});
  finish_random(inst, prof, rng);
  return canonicalize(std::move(inst));
}

}  // namespace detail

/// Deterministic in (seed, profile).
inline Instance gen_random(std::uint64_t seed, const Profile& prof) {
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kGeneratorAttempts; ++attempt) {
    auto inst = prof.mode == Mode::Geometric ? detail::try_geometric(prof, rng) : detail::try_abstract(prof, rng);
    if (inst) return *inst;
  }
  throw Error(ErrorCode::FilterUnsatisfiable,
              "profile '" + prof.name + "' produced no admissible set in " + std::to_string(kGeneratorAttempts) + " attempts");
}

inline Instance gen_random(std::uint64_t seed, std::string_view profile) { return gen_random(seed, named_profile(profile)); }

}  // namespace rbsc
