#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "freaco/freaco.hpp"

using namespace freaco;
namespace fs = std::filesystem;

namespace {

ExperimentSummary small_summary() {
  ExperimentSpec spec;
  spec.problems = {builtin_problem(1), builtin_problem(8)};
  spec.runs = 4;
  spec.config.t_max = 15;
  spec.base_seed = 9;
  return run_experiment(spec);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / ("freaco_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                          "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Csv, EmptySelectionIsHeaderOnly) {
  const ExperimentSummary empty;
  EXPECT_EQ(summary_csv(empty), "problem,avg,mdn,sd,fbest,evals,mean_error\n");
  EXPECT_EQ(trace_csv(empty), "problem,run,iter,best_so_far\n");
}

TEST(Csv, AverageSurvivesExport) {
  const auto s = small_summary();
  const auto rows = parse_csv(summary_csv(s));
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t k = 0; k < 2; ++k) {
    ASSERT_EQ(rows[k + 1].size(), 7u);
    EXPECT_EQ(rows[k + 1][0], s.problems[k].name);
    EXPECT_NEAR(std::stod(rows[k + 1][1]), s.problems[k].avg_best, 1e-12);
    EXPECT_EQ(std::stod(rows[k + 1][5]), 50.0 + 3 * 14);
  }
}

TEST(Csv, TraceRows) {
  const auto s = small_summary();
  const auto rows = parse_csv(trace_csv(s));
  ASSERT_EQ(rows.size(), 1 + 2 * 4 * 15u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"problem1", "0", "1", format_double(s.problems[0].traces[0][0])}));
  EXPECT_EQ(rows.back()[2], "15");
}

TEST(Csv, UnknownErrorIsEmpty) {
  ExperimentSpec spec;
  spec.problems.push_back(make_problem("ex", example1_instance(), kExample1Objective));
  spec.runs = 1;
  spec.config.t_max = 2;
  const auto rows = parse_csv(summary_csv(run_experiment(spec)));
  ASSERT_EQ(rows[1].size(), 7u);
  EXPECT_EQ(rows[1][6], "");
}

TEST(Json, SummaryRoundTrip) {
  const auto s = small_summary();
  const Json j = summary_to_json(s);
  const auto back = summary_from_json(Json::parse(j.dump()));
  EXPECT_EQ(summary_to_json(back), j);
  EXPECT_EQ(back.config, s.config);
  EXPECT_EQ(back.problems[1].traces, s.problems[1].traces);
  EXPECT_EQ(back.problems[0].mean_error, s.problems[0].mean_error);
}

TEST(Json, ProblemRoundTrip) {
  for (const auto& p : builtin_problems()) {
    const auto q = problem_from_json(Json::parse(problem_to_json(p).dump()));
    EXPECT_EQ(q.instance.A(), p.instance.A());
    EXPECT_EQ(q.instance.b(), p.instance.b());
    EXPECT_EQ(q.objective_source, p.objective_source);
    EXPECT_EQ(q.known_optimum, p.known_optimum);
  }
}

TEST(Json, MalformedInstances) {
  EXPECT_THROW(problem_from_json(Json::parse(R"({"A": [[0.5]], "objective": "x1"})")), Error);
  EXPECT_THROW(problem_from_json(Json::parse(R"({"A": [[0.5, 0.2], [0.1]], "b": [0.5, 0.1], "objective": "x1"})")),
               DimensionError);
  EXPECT_THROW(problem_from_json(Json::parse(R"({"A": [[1.5]], "b": [0.5], "objective": "x1"})")), RangeError);
  EXPECT_THROW(problem_from_json(Json::parse(R"({"A": [[0.5]], "b": [0.5], "objective": "x2"})")), ParseError);
  EXPECT_THROW(problem_from_json(Json::parse(R"({"A": [[0.2]], "b": [0.5], "objective": "x1"})")), InfeasibleError);
}

TEST(Files, ExportAndLoad) {
  const auto dir = temp_dir();
  const auto s = small_summary();
  export_summary(s, ExportFormat::summary_csv, dir / "summary.csv");
  export_summary(s, ExportFormat::json, dir / "traces.json");
  EXPECT_EQ(read_file(dir / "summary.csv"), summary_csv(s));
  EXPECT_EQ(summary_to_json(summary_from_json(Json::parse(read_file(dir / "traces.json")))), summary_to_json(s));

  const auto p = load_problem(FREACO_TEST_DATA "/example1.json");
  EXPECT_EQ(p.instance.A(), example1_instance().A());
  EXPECT_EQ(p.objective_source, kExample1Objective);
  fs::remove_all(dir);
}

TEST(Files, ErrorsNameThePath) {
  try {
    load_problem("/nonexistent/instance.json");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), "/nonexistent/instance.json");
  }
  EXPECT_THROW(export_summary(ExperimentSummary{}, ExportFormat::json, "/nonexistent/dir/x.json"), IoError);
  const auto dir = temp_dir();
  write_file(dir / "bad.json", "{ not json");
  EXPECT_THROW(load_problem(dir / "bad.json"), IoError);
  fs::remove_all(dir);
}

TEST(Json, OracleReport) {
  Rng rng(1);
  const Json j = report_to_json(reference_optimum(builtin_problem(1), 20, 5, rng));
  EXPECT_EQ(j.at("path_count"), "4");
  EXPECT_EQ(j.at("cells"), 4);
  EXPECT_EQ(j.at("best_point").size(), 6u);
  for (auto col : j.at("best_path")) EXPECT_GE(col.get<int>(), 1);
}
