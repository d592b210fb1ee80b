#include <gtest/gtest.h>

#include "rbsc/generators.hpp"
#include "rbsc/io.hpp"
#include "rbsc/kernel.hpp"
#include "rbsc/oracle.hpp"
#include "support/oracles.hpp"

using namespace rbsc;

TEST(BruteForce, EmptyFamilyWithoutBlue) {
  auto sol = brute_force_solve(parse_instance("rbsc 1\nmode abstract\nbudget_lines 0\nbudget_red 0\n"));
  ASSERT_TRUE(sol);
  EXPECT_TRUE(sol->chosen.empty());
}

TEST(BruteForce, RedOverBudget) {
  EXPECT_FALSE(brute_force_solve(parse_instance("rbsc 1\nmode abstract\nbudget_lines 1\nbudget_red 0\npoint 1 B\npoint 2 R\nset 1 : 1 2\n")));
}

TEST(BruteForce, TinyInstance) {
  auto sol = brute_force_solve(parse_instance(rbsc::testing::kTinyText));
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->red_covered, 1u);
  EXPECT_EQ(sol->chosen.size(), 2u);
}

TEST(BruteForce, CanonicalMinimumPrefersFewerRedsThenFewerSets) {
  auto inst = parse_instance(R"(rbsc 1
mode abstract
budget_lines 3
budget_red 2
point 1 B
point 2 B
point 3 R
set 1 : 1 2 3
set 2 : 1
set 3 : 2
set 4 : 2
)");
  auto sol = brute_force_solve(inst);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->red_covered, 0u);
  EXPECT_EQ(sol->chosen, (std::vector<SetId>{SetId{2}, SetId{3}}));
}

TEST(BruteForce, Guard) {
  std::string text = "rbsc 1\nmode abstract\nbudget_lines 1\nbudget_red 0\npoint 1 B\n";
  for (int i = 1; i <= 26; ++i) text += "set " + std::to_string(i) + " : 1\n";
  auto inst = parse_instance(text);
  try {
    brute_force_solve(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
  EXPECT_TRUE(brute_force_solve(inst, GuardOptions{false}));
}

TEST(BruteForce, AgreesWithUnprunedEnumeration) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = gen_random(seed, seed % 2 ? "geometric" : "one-red");
    if (inst.family_size() > 14) continue;
    auto sol = brute_force_solve(inst);
    auto fewest = rbsc::testing::min_feasible_size(inst);
    ASSERT_EQ(sol.has_value(), fewest.has_value()) << serialize(inst);
    if (sol) EXPECT_TRUE(sol->feasible());
  }
}

TEST(RedSubsets, RedFreeSets) {
  auto inst = parse_instance("rbsc 1\nmode abstract\nbudget_lines inf\nbudget_red 0\npoint 1 B\npoint 2 R\nset 1 : 1\nset 2 : 1 2\n");
  auto sol = solve_rbsc_by_red_subsets(inst);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->chosen, std::vector<SetId>{SetId{1}});
}

TEST(RedSubsets, OnlyRedSetCoversBlue) {
  auto inst = parse_instance("rbsc 1\nmode abstract\nbudget_lines inf\nbudget_red 0\npoint 1 B\npoint 2 R\nset 1 : 1 2\n");
  EXPECT_FALSE(solve_rbsc_by_red_subsets(inst));
}

TEST(RedSubsets, BoundedBudgetRejected) {
  try {
    solve_rbsc_by_red_subsets(parse_instance(rbsc::testing::kTinyText));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundedBudget);
  }
}

TEST(RedSubsets, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = gen_random(5000 + seed, seed % 2 ? "rbsc" : "rbsc-two-red");
    auto a = solve_rbsc_by_red_subsets(inst);
    auto b = brute_force_solve(inst);
    ASSERT_EQ(a.has_value(), b.has_value()) << serialize(inst);
    if (a) {
      EXPECT_TRUE(a->feasible());
      EXPECT_EQ(a->red_covered, b->red_covered);
    }
  }
}

TEST(WeightedBruteForce, EllKernelKeepsDecision) {
  const char* profiles[] = {"geometric", "abstract", "bounded-red"};
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = gen_random(7700 + seed, profiles[seed % 3]);
    auto res = kernelize_ell(inst);
    const bool want = brute_force_solve(inst).has_value();
    if (res.is_no()) {
      EXPECT_FALSE(want);
      continue;
    }
    EXPECT_EQ(brute_force_solve(res.kernel).has_value(), want) << serialize(inst);
  }
}
