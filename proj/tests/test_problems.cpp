#include <gtest/gtest.h>

#include "freaco/freaco.hpp"

using namespace freaco;

TEST(Builtins, TenFeasibleProblems) {
  const auto problems = builtin_problems();
  ASSERT_EQ(problems.size(), 10u);
  for (const auto& p : problems) {
    EXPECT_TRUE(is_feasible(p.instance, 1e-9)) << p.name;
    EXPECT_EQ(p.objective.dimension(), p.instance.cols()) << p.name;
    EXPECT_TRUE(p.known_optimum.has_value()) << p.name;
  }
}

TEST(Builtins, Shapes) {
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{4, 6}, {6, 6},  {8, 8},  {8, 8},   {8, 10},
                                                                   {9, 10}, {7, 10}, {7, 10}, {10, 10}, {10, 12}};
  for (std::size_t k = 0; k < 10; ++k) {
    const auto p = builtin_problem(k + 1);
    EXPECT_EQ(p.name, "problem" + std::to_string(k + 1));
    EXPECT_EQ(p.instance.rows(), shapes[k].first) << p.name;
    EXPECT_EQ(p.instance.cols(), shapes[k].second) << p.name;
  }
}

TEST(Builtins, KnownOptima) {
  const std::vector<double> optima = {-0.0096019, 0.8197, 80.3752, -0.39657, -0.27162,
                                      1.2612,     140.4693, -0.10108, 1.277,  55.7954};
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(*builtin_problem(k + 1).known_optimum, optima[k]);
}

TEST(Builtins, IndexOutOfRange) {
  EXPECT_THROW(builtin_problem(0), RangeError);
  EXPECT_THROW(builtin_problem(11), RangeError);
}

TEST(Builtins, ObjectivesFiniteOnTheFeasibleBox) {
  Rng rng(8);
  for (const auto& p : builtin_problems()) {
    const auto xbar = compute_max_solution(p.instance);
    for (const auto& e : enumerate_paths(compute_candidate_sets(p.instance, xbar))) {
      const auto cell = cell_of(e, p.instance, xbar);
      EXPECT_TRUE(std::isfinite(p.objective(cell.lower))) << p.name;
      EXPECT_TRUE(std::isfinite(p.objective(cell.upper))) << p.name;
    }
  }
}

TEST(MakeProblem, RejectsInfeasibleAndBadObjective) {
  const Instance bad({{0.7, 0.2}, {0.5, 0.4}}, {0.7, 0.6});
  EXPECT_THROW(make_problem("bad", bad, "x1"), InfeasibleError);
  EXPECT_THROW(make_problem("ex", example1_instance(), "x7"), ParseError);
  const auto p = make_problem("ex", example1_instance(), kExample1Objective);
  EXPECT_FALSE(p.known_optimum.has_value());
}
