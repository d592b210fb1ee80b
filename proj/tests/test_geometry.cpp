#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "rbsc/generators.hpp"
#include "rbsc/geometry.hpp"

using namespace rbsc;

namespace {

PlanePoint pt(long long x, long long y) { return {Rational(x), Rational(y)}; }
PlanePoint pt(long long xn, long long xd, long long yn, long long yd) { return {make_rational(xn, xd), make_rational(yn, yd)}; }

LineEquation line(long long a, long long b, long long c) { return LineEquation::from_coefficients(a, b, c); }

void expect_coefficients(const LineEquation& l, long long a, long long b, long long c) {
  EXPECT_EQ(l.a(), a);
  EXPECT_EQ(l.b(), b);
  EXPECT_EQ(l.c(), c);
}

}  // namespace

TEST(Collinear, PointsOnDiagonal) { EXPECT_TRUE(collinear(pt(0, 0), pt(1, 1), pt(2, 2))); }

TEST(Collinear, AxisTriangle) { EXPECT_FALSE(collinear(pt(0, 0), pt(1, 0), pt(0, 1))); }

TEST(Collinear, RepeatedPointIsDegenerate) { EXPECT_TRUE(collinear(pt(0, 0), pt(1, 1), pt(1, 1))); }

TEST(Collinear, ExactWithTinyOffsets) {
  // 1/3 steps are not representable in binary floating point.
  EXPECT_TRUE(collinear(pt(0, 1, 0, 1), pt(1, 3, 1, 3), pt(2, 3, 2, 3)));
  EXPECT_FALSE(collinear(pt(0, 1, 0, 1), pt(1, 3, 1, 3), pt(2, 3, 2000001, 3000000)));
}

TEST(CanonicalLine, Diagonal) { expect_coefficients(canonical_line(pt(0, 0), pt(2, 2)), 1, -1, 0); }

TEST(CanonicalLine, Horizontal) { expect_coefficients(canonical_line(pt(0, 1), pt(5, 1)), 0, 1, -1); }

TEST(CanonicalLine, ClearsDenominators) {
  auto l = canonical_line(pt(1, 2, 0, 1), pt(1, 2, 3, 1));
  expect_coefficients(l, 2, 0, -1);
  EXPECT_TRUE(l.contains(pt(1, 2, 0, 1)));
  EXPECT_TRUE(l.contains(pt(1, 2, 3, 1)));
}

TEST(CanonicalLine, EqualPointsRejected) {
  try {
    canonical_line(pt(1, 1), pt(1, 1));
    FAIL() << "expected EqualPoints";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EqualPoints);
  }
}

TEST(CanonicalLine, ScaledCoefficientsNormalizeEqual) {
  EXPECT_EQ(line(2, -4, 6), line(-1, 2, -3));
  expect_coefficients(line(0, -3, 9), 0, 1, -3);
}

TEST(CanonicalLine, DegenerateCoefficientsRejected) { EXPECT_THROW(line(0, 0, 1), Error); }

TEST(MaximalCollinearFamily, SquareCorners) {
  std::vector<PlanePoint> pts{pt(0, 0), pt(0, 1), pt(1, 0), pt(1, 1)};
  auto fam = maximal_collinear_family(pts);
  EXPECT_EQ(fam.size(), 6u);
  for (const auto& [_, idx] : fam) EXPECT_EQ(idx.size(), 2u);
}

TEST(MaximalCollinearFamily, DiagonalPlusOffPoint) {
  std::vector<PlanePoint> pts{pt(0, 0), pt(1, 1), pt(2, 2), pt(0, 1)};
  auto fam = maximal_collinear_family(pts);
  ASSERT_EQ(fam.size(), 4u);
  std::multiset<std::size_t> sizes;
  for (const auto& [_, idx] : fam) sizes.insert(idx.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 2, 2, 3}));
  EXPECT_EQ(fam.at(line(1, -1, 0)), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(MaximalCollinearFamily, ParabolaIsInGeneralPosition) {
  std::vector<PlanePoint> pts;
  for (long long t = 1; t <= 5; ++t) pts.push_back(pt(t, t * t));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) EXPECT_FALSE(collinear(pts[i], pts[j], pts[k]));
  auto fam = maximal_collinear_family(pts);
  EXPECT_EQ(fam.size(), 10u);
  for (const auto& [_, idx] : fam) EXPECT_EQ(idx.size(), 2u);
}

TEST(MaximalCollinearFamily, DuplicatePointsRejected) {
  std::vector<PlanePoint> pts{pt(0, 0), pt(1, 1), pt(0, 0)};
  try {
    maximal_collinear_family(pts);
    FAIL() << "expected DuplicatePoints";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicatePoints);
  }
}

TEST(Intersect, DiagonalAndHorizontal) {
  auto p = intersect(line(1, -1, 0), line(0, 1, -1));
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, pt(1, 1));
}

TEST(Intersect, NegativeDeterminant) {
  auto p = intersect(line(0, 1, -1), line(1, 0, -2));
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, pt(2, 1));
  EXPECT_EQ(make_rational(3, -6), make_rational(-1, 2));
}

TEST(Intersect, ParallelIsAbsent) { EXPECT_FALSE(intersect(line(0, 1, 0), line(0, 1, -1))); }

TEST(Intersect, SolvesSystemExactly) {
  auto l1 = line(1, -2, 0);
  auto l2 = line(3, 1, -7);
  auto p = intersect(l1, l2);
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, pt(2, 1));
  EXPECT_TRUE(l1.contains(*p));
  EXPECT_TRUE(l2.contains(*p));
}

TEST(Intersect, SameLineRejected) {
  try {
    intersect(line(1, 1, 1), line(2, 2, 2));
    FAIL() << "expected SameLine";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SameLine);
  }
}

TEST(GeometryProperties, RandomizedInvariants) {
  Rng rng(2024);
  auto coord = [&] { return make_rational(static_cast<long long>(rng.between(0, 40)) - 20, static_cast<long long>(rng.between(1, 5))); };
  for (int iter = 0; iter < 2000; ++iter) {
    PlanePoint p{coord(), coord()}, q{coord(), coord()}, r{coord(), coord()};
    if (p == q) continue;
    auto l = canonical_line(p, q);
    EXPECT_EQ(l, canonical_line(q, p));
    EXPECT_TRUE(l.contains(p));
    EXPECT_TRUE(l.contains(q));
    EXPECT_EQ(collinear(p, q, r), l.contains(r));
    EXPECT_TRUE(l.a() > 0 || (l.a() == 0 && l.b() > 0));
    EXPECT_EQ(gcd(gcd(abs(l.a()), abs(l.b())), abs(l.c())), 1);
  }
}

TEST(GeometryProperties, FamilyCoversEveryPairOnce) {
  Rng rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    std::set<PlanePoint> uniq;
    while (uniq.size() < 9) uniq.insert({Rational(static_cast<long long>(rng.between(0, 3))), Rational(static_cast<long long>(rng.between(0, 3)))});
    std::vector<PlanePoint> pts(uniq.begin(), uniq.end());
    auto fam = maximal_collinear_family(pts);
    EXPECT_LE(fam.size(), pts.size() * (pts.size() - 1) / 2);
    std::vector<std::vector<int>> pair_count(pts.size(), std::vector<int>(pts.size(), 0));
    for (const auto& [l, idx] : fam) {
      EXPECT_GE(idx.size(), 2u);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        EXPECT_EQ(l.contains(pts[k]), std::binary_search(idx.begin(), idx.end(), k));
      }
      for (auto i : idx)
        for (auto j : idx)
          if (i < j) ++pair_count[i][j];
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) EXPECT_EQ(pair_count[i][j], 1);
  }
}
