#pragma once

// Exact plane geometry over arbitrary-precision rationals. Nothing in here
// touches floating point.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rbsc/error.hpp"

namespace rbsc {

using Integer = boost::multiprecision::cpp_int;
// cpp_rational keeps itself in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::Semantic, "zero denominator");
  // Boost 1.74 rejects a negative denominator for unbounded integers.
  if (den < 0) return Rational(Integer(-num), Integer(-den));
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

struct PlanePoint {
  Rational x;
  Rational y;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  friend bool operator<(const PlanePoint& a, const PlanePoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline std::ostream& operator<<(std::ostream& os, const PlanePoint& p) {
  return os << '(' << to_string(p.x) << ", " << to_string(p.y) << ')';
}

/// The line a*x + b*y + c = 0 with integer coefficients in canonical form:
/// (a, b) != (0, 0), gcd(|a|, |b|, |c|) = 1 and the first nonzero of (a, b)
/// is positive. Two canonical equations are equal iff they describe the
/// same point set.
class LineEquation {
 public:
  /// Normalizes arbitrary rational coefficients.
  static LineEquation from_coefficients(const Rational& a, const Rational& b, const Rational& c) {
    if (a == 0 && b == 0) throw Error(ErrorCode::PreconditionViolated, "degenerate line 0x + 0y + c");
    using boost::multiprecision::denominator;
    using boost::multiprecision::lcm;
    using boost::multiprecision::numerator;
    Integer scale = lcm(lcm(denominator(a), denominator(b)), denominator(c));
    Integer ia = numerator(a) * (scale / denominator(a));
    Integer ib = numerator(b) * (scale / denominator(b));
    Integer ic = numerator(c) * (scale / denominator(c));
    Integer g = gcd(gcd(abs(ia), abs(ib)), abs(ic));
    ia /= g;
    ib /= g;
    ic /= g;
    if (ia < 0 || (ia == 0 && ib < 0)) {
      ia = -ia;
      ib = -ib;
      ic = -ic;
    }
    return LineEquation(std::move(ia), std::move(ib), std::move(ic));
  }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }

  Rational evaluate(const PlanePoint& p) const { return Rational(a_) * p.x + Rational(b_) * p.y + Rational(c_); }
  bool contains(const PlanePoint& p) const { return evaluate(p) == 0; }

  friend bool operator==(const LineEquation&, const LineEquation&) = default;
  friend bool operator<(const LineEquation& l, const LineEquation& r) {
    if (l.a_ != r.a_) return l.a_ < r.a_;
    if (l.b_ != r.b_) return l.b_ < r.b_;
    return l.c_ < r.c_;
  }

 private:
  LineEquation(Integer a, Integer b, Integer c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  Integer a_;
  Integer b_;
  Integer c_;
};

inline std::ostream& operator<<(std::ostream& os, const LineEquation& l) {
  return os << '(' << l.a() << ", " << l.b() << ", " << l.c() << ')';
}

/// Zero iff p, q, r are collinear; the sign gives the orientation.
inline Rational orientation(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

inline bool collinear(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r) {
  return orientation(p, q, r) == 0;
}

inline LineEquation canonical_line(const PlanePoint& p, const PlanePoint& q) {
  if (p == q) throw Error(ErrorCode::EqualPoints, "canonical_line needs two distinct points");
  // (y2 - y1) x + (x1 - x2) y + (x2 y1 - x1 y2) = 0
  return LineEquation::from_coefficients(q.y - p.y, p.x - q.x, q.x * p.y - p.x * q.y);
}

/// Unique intersection of two distinct lines; nullopt when parallel.
inline std::optional<PlanePoint> intersect(const LineEquation& l1, const LineEquation& l2) {
  if (l1 == l2) throw Error(ErrorCode::SameLine, "intersect called with identical lines");
  Integer det = l1.a() * l2.b() - l2.a() * l1.b();
  if (det == 0) return std::nullopt;
  Rational x = make_rational(l1.b() * l2.c() - l2.b() * l1.c(), det);
  Rational y = make_rational(l1.c() * l2.a() - l2.c() * l1.a(), det);
  return PlanePoint{std::move(x), std::move(y)};
}

inline void require_distinct(std::span<const PlanePoint> points) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i - 1]] == points[order[i]]) {
      throw Error(ErrorCode::DuplicatePoints, "points " + std::to_string(order[i - 1]) + " and " +
                                                  std::to_string(order[i]) + " coincide");
    }
  }
}

/// Every line through at least two of the given points, mapped to the
/// sorted indices of all input points on it.
inline std::map<LineEquation, std::vector<std::size_t>> maximal_collinear_family(
    std::span<const PlanePoint> points) {
  require_distinct(points);
  std::map<LineEquation, std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      auto line = canonical_line(points[i], points[j]);
      if (lines.contains(line)) continue;
      std::vector<std::size_t> on_line;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (k == i || k == j || line.contains(points[k])) on_line.push_back(k);
      }
      lines.emplace(std::move(line), std::move(on_line));
    }
  }
  return lines;
}

}  // namespace rbsc
