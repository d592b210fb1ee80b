#include <gtest/gtest.h>

#include <string>

#include "rbsc/generators.hpp"
#include "rbsc/io.hpp"
#include "rbsc/model.hpp"
#include "support/oracles.hpp"

using namespace rbsc;
using rbsc::testing::kTinyText;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an rbsc::Error";
  return ErrorCode::Io;
}

}  // namespace

TEST(Validate, NonCollinearSet) {
  auto inst = parse_instance(R"(rbsc 1
mode geometric
budget_lines 1
budget_red 0
point 1 B 0 0
point 2 B 1 0
point 3 B 0 1
set 1 : 1 2 3
)");
  auto report = validate(inst);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.has(ValidationIssue::Kind::NonCollinearSet));
}

TEST(Validate, NonMaximalSet) {
  auto inst = parse_instance(R"(rbsc 1
mode geometric
budget_lines 1
budget_red 0
point 1 B 0 0
point 2 B 1 1
point 3 B 2 2
set 1 : 1 2
)");
  auto report = validate(inst);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.has(ValidationIssue::Kind::NonMaximalSet));
}

TEST(Validate, NonLinearSystemIsAWarning) {
  auto inst = parse_instance(R"(rbsc 1
mode abstract
budget_lines 1
budget_red 0
point 1 B
point 2 B
point 3 B
point 4 B
set 1 : 1 2 3
set 2 : 2 3 4
)");
  auto report = validate(inst);
  EXPECT_TRUE(report.ok());
  EXPECT_FALSE(report.linear_system);
  EXPECT_TRUE(report.has(ValidationIssue::Kind::NotLinearSystem));
}

TEST(Validate, DuplicateCoordinatesAndDanglingIds) {
  Instance inst;
  inst.mode = Mode::Geometric;
  inst.elements.push_back({ElementId{1}, Color::Blue, PlanePoint{0, 0}, 1});
  inst.elements.push_back({ElementId{2}, Color::Red, PlanePoint{0, 0}, 1});
  inst.family.push_back({SetId{1}, {ElementId{1}, ElementId{9}}});
  auto report = validate(inst);
  EXPECT_TRUE(report.has(ValidationIssue::Kind::DuplicateCoordinates));
  EXPECT_TRUE(report.has(ValidationIssue::Kind::DanglingElement));
}

TEST(Verify, EmptyChoiceWithoutBlue) {
  auto inst = parse_instance("rbsc 1\nmode abstract\nbudget_lines 0\nbudget_red 0\npoint 1 R\n");
  auto sol = verify(inst, {});
  EXPECT_TRUE(sol.feasible());
  EXPECT_EQ(sol.red_covered, 0u);
}

TEST(Verify, AllSetsOnTinyInstance) {
  auto inst = parse_instance(kTinyText);
  auto sol = verify(inst, {SetId{1}, SetId{2}});
  EXPECT_TRUE(sol.feasible());
  EXPECT_EQ(sol.red_covered, 1u);
  EXPECT_EQ(sol.blue_covered, 3u);
}

TEST(Verify, MissingBlueReported) {
  auto inst = parse_instance(kTinyText);
  auto sol = verify(inst, {SetId{1}});
  EXPECT_FALSE(sol.feasible());
  EXPECT_EQ(sol.blue_covered, 2u);
  EXPECT_EQ(sol.failure_reason(), "1 blue element(s) uncovered");
}

TEST(Verify, SharedRedCountedOnce) {
  auto inst = parse_instance(R"(rbsc 1
mode abstract
budget_lines 2
budget_red 1
point 1 B
point 2 B
point 3 R w=4
set 1 : 1 3
set 2 : 2 3
)");
  auto sol = verify(inst, {SetId{1}, SetId{2}});
  EXPECT_EQ(sol.red_covered, 4u);
  EXPECT_FALSE(sol.within_red);
}

TEST(Verify, UnknownSetId) {
  auto inst = parse_instance(kTinyText);
  EXPECT_EQ(code_of([&] { verify(inst, {SetId{7}}); }), ErrorCode::UnknownSetId);
}

TEST(Io, TinyInstanceRoundTripsByteIdentically) {
  auto inst = parse_instance(kTinyText);
  EXPECT_EQ(serialize(inst), kTinyText);
  EXPECT_EQ(parse_instance(serialize(inst)), inst);
}

TEST(Io, UnboundedBudget) {
  auto inst = parse_instance("rbsc 1\nmode abstract\nbudget_lines inf\nbudget_red 2\n");
  EXPECT_FALSE(inst.budget_lines.has_value());
  EXPECT_NE(serialize(inst).find("budget_lines inf"), std::string::npos);
}

TEST(Io, WeightOnBlueIsSemanticError) {
  EXPECT_EQ(code_of([] { parse_instance("rbsc 1\nmode abstract\nbudget_lines 1\nbudget_red 0\npoint 1 B w=2\n"); }),
            ErrorCode::Semantic);
}

TEST(Io, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_instance("rbsc 1\nmode abstract\nbudget_lines 1\nbudget_red 0\nbogus 3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
  }
}

TEST(Io, SemanticErrors) {
  const std::string head = "rbsc 1\nmode geometric\nbudget_lines 1\nbudget_red 0\n";
  EXPECT_EQ(code_of([&] { parse_instance(head + "point 1 B 1/0 2\n"); }), ErrorCode::Semantic);
  EXPECT_EQ(code_of([&] { parse_instance(head + "point 1 B\n"); }), ErrorCode::Semantic);
  EXPECT_EQ(code_of([&] { parse_instance(head + "point 1 B 0 0\nset 1 : 1 2\n"); }), ErrorCode::Semantic);
  EXPECT_EQ(code_of([&] { parse_instance(head + "point 1 B 0 0\npoint 1 R 1 1\n"); }), ErrorCode::Semantic);
}

TEST(Io, RationalCoordinatesAreReduced) {
  auto inst = parse_instance("rbsc 1\nmode geometric\nbudget_lines 1\nbudget_red 0\npoint 1 B 2/4 -3\n");
  EXPECT_EQ(inst.elements[0].point->x, make_rational(1, 2));
  EXPECT_NE(serialize(inst).find("point 1 B 1/2 -3/1"), std::string::npos);
}

TEST(Io, RandomCorpusRoundTrips) {
  const auto names = profile_names();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto inst = gen_random(seed, names[seed % names.size()]);
    auto text = serialize(inst);
    auto back = parse_instance(text);
    ASSERT_EQ(back, inst) << "seed " << seed;
    ASSERT_EQ(serialize(back), text) << "seed " << seed;
  }
}

TEST(Io, SolutionFileRoundTrip) {
  auto inst = parse_instance(kTinyText);
  auto sol = verify(inst, {SetId{2}, SetId{1}});
  auto sf = parse_solution(serialize_solution(sol));
  EXPECT_TRUE(sf.yes);
  EXPECT_EQ(sf.sets, (std::vector<SetId>{SetId{1}, SetId{2}}));
  EXPECT_EQ(sf.red, 1u);
  EXPECT_EQ(sf.blue, 3u);
  EXPECT_FALSE(parse_solution(serialize_solution(std::nullopt)).yes);
}

TEST(Io, SourceProblemFormats) {
  auto sc = parse_setcover("setcover 1\nn 3\nk 2\nset 1 : 1 2\nset 2 : 3\n");
  EXPECT_EQ(sc.n, 3u);
  EXPECT_EQ(sc.sets.size(), 2u);
  EXPECT_EQ(parse_setcover(serialize_setcover(sc)).sets, sc.sets);
  auto g = parse_mcgraph("mcgraph 1\nclasses 2\nvertex 1 1\nvertex 2 2\nedge 2 1\n");
  EXPECT_TRUE(g.adjacent(1, 2));
  EXPECT_EQ(serialize_mcgraph(parse_mcgraph(serialize_mcgraph(g))), serialize_mcgraph(g));
  EXPECT_EQ(code_of([] { parse_mcgraph("mcgraph 1\nclasses 1\nvertex 1 1\nvertex 2 1\nedge 1 2\n"); }), ErrorCode::Semantic);
}
