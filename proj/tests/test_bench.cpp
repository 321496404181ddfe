#include <gtest/gtest.h>

#include <cmath>

#include "freaco/freaco.hpp"

using namespace freaco;

namespace {

ExperimentSpec small_spec(std::vector<std::size_t> problems, std::size_t runs, std::size_t threads) {
  ExperimentSpec spec;
  for (auto k : problems) spec.problems.push_back(builtin_problem(k));
  spec.runs = runs;
  spec.base_seed = 100;
  spec.threads = threads;
  spec.config.t_max = 20;
  return spec;
}

}  // namespace

TEST(Stats, MedianAndSd) {
  EXPECT_EQ(stats::median({3, 1, 2}), 2);
  EXPECT_EQ(stats::median({4, 1, 3, 2}), 2.5);
  EXPECT_EQ(stats::sample_sd({5}), 0);
  EXPECT_NEAR(stats::sample_sd({1, 2, 3, 4}), std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(stats::mean({1, 2, 3, 6}), 3);
}

TEST(Experiment, SingleRun) {
  const auto s = run_experiment(small_spec({2}, 1, 1));
  ASSERT_EQ(s.problems.size(), 1u);
  const auto& p = s.problems[0];
  SolverConfig cfg;
  cfg.t_max = 20;
  cfg.seed = 100;
  const double best = run(builtin_problem(2), cfg).best.f;
  EXPECT_EQ(p.avg_best, best);
  EXPECT_EQ(p.median_best, best);
  EXPECT_EQ(p.f_best, best);
  EXPECT_EQ(p.sd_best, 0.0);
}

TEST(Experiment, SummaryMatchesIndividualRuns) {
  const auto s = run_experiment(small_spec({1, 4}, 6, 3));
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& p = s.problems[k];
    std::vector<double> finals;
    double err = 0;
    for (std::size_t r = 0; r < 6; ++r) {
      SolverConfig cfg;
      cfg.t_max = 20;
      cfg.seed = 100 + r;
      const auto res = run(builtin_problem(k == 0 ? 1 : 4), cfg);
      EXPECT_EQ(p.traces[r], res.trace);
      EXPECT_EQ(p.eval_counts[r], 50u + 3 * 19);
      finals.push_back(res.best.f);
      for (double v : res.trace) err += v - *p.known_optimum;
    }
    EXPECT_EQ(p.final_best, finals);
    EXPECT_NEAR(p.mean_error, err / (6 * 20), 1e-12);
    EXPECT_LE(p.f_best, p.median_best);
    EXPECT_LE(p.median_best, p.worst_best);
    EXPECT_EQ(p.mean_eval_count, 107.0);
  }
  EXPECT_NEAR(s.mse(), (std::pow(s.problems[0].mean_error, 2) + std::pow(s.problems[1].mean_error, 2)) / 2, 1e-15);
}

TEST(Experiment, ThreadCountDoesNotChangeTheSummary) {
  const auto a = run_experiment(small_spec({3, 6, 9}, 5, 1));
  const auto b = run_experiment(small_spec({3, 6, 9}, 5, 7));
  EXPECT_EQ(summary_csv(a), summary_csv(b));
  EXPECT_EQ(summary_to_json(a), summary_to_json(b));
}

TEST(Experiment, RunErrorsCarryTheRunIndex) {
  auto spec = small_spec({}, 2, 1);
  const Instance bad({{0.7, 0.2}, {0.5, 0.4}}, {0.7, 0.6});
  spec.problems.push_back(Problem{"bad", bad, parse("x1", 2), "x1", std::nullopt});
  try {
    run_experiment(spec);
    FAIL() << "expected RunError";
  } catch (const RunError& e) {
    EXPECT_EQ(e.problem(), "bad");
    EXPECT_EQ(e.run(), 0u);
  }
  spec.runs = 0;
  EXPECT_THROW(run_experiment(spec), RangeError);
}

TEST(Experiment, UnknownOptimumGivesNaNError) {
  ExperimentSpec spec;
  spec.problems.push_back(make_problem("ex", example1_instance(), kExample1Objective));
  spec.runs = 2;
  spec.config.t_max = 5;
  const auto s = run_experiment(spec);
  EXPECT_TRUE(std::isnan(s.problems[0].mean_error));
  EXPECT_TRUE(std::isnan(s.mse()));
}

TEST(Experiment, DefaultBudgetOnAllBuiltins) {
  ExperimentSpec spec;
  spec.problems = builtin_problems();
  spec.runs = 30;
  const auto s = run_experiment(spec);
  for (const auto& p : s.problems) {
    EXPECT_EQ(p.mean_eval_count, 347.0) << p.name;
    EXPECT_EQ(p.traces.size() * p.traces[0].size(), 3000u) << p.name;
  }
  EXPECT_NEAR(s.problems[3].f_best, -0.39657, 1e-3);
}

TEST(Experiment, FlagsOptimaBeatenBeyondNoise) {
  // A best value below the recorded optimum either means a transcription
  // problem with the recorded value or an infeasible point. Flagged problems
  // must come with a feasible point the independent oracle confirms.
  ExperimentSpec spec;
  spec.problems = builtin_problems();
  spec.runs = 30;
  spec.base_seed = 1;
  const auto s = run_experiment(spec);
  for (std::size_t k = 0; k < s.problems.size(); ++k) {
    const auto& p = s.problems[k];
    if (p.f_best >= *p.known_optimum - 1e-6) continue;
    Rng rng(k);
    const auto rep = reference_optimum(spec.problems[k], 200, 20, rng);
    EXPECT_LE(residual(spec.problems[k].instance, rep.best_point), kEqTol);
    EXPECT_LT(rep.best_value, *p.known_optimum - 1e-6) << p.name << " flagged but the oracle disagrees";
    EXPECT_LE(rep.best_value, p.f_best + 1e-6) << p.name;
  }
  const auto flagged = optimum_violations(s, 1e-6);
  std::size_t direct = 0;
  for (const auto& p : s.problems) direct += p.f_best < *p.known_optimum - 1e-6;
  EXPECT_EQ(flagged.size(), direct);
}
