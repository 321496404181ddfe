#pragma once

// File formats: instance JSON, oracle report JSON, experiment summary
// CSV/JSON and trace CSV. Numbers are written with 17 significant digits so
// every double survives a round trip.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "freaco/bench.hpp"
#include "freaco/error.hpp"
#include "freaco/expr.hpp"
#include "freaco/fre_core.hpp"
#include "freaco/oracle.hpp"
#include "freaco/problems.hpp"

namespace freaco {

using Json = nlohmann::json;

/// I/O failure; the message names the path.
class IoError : public Error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : Error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string format_double(double v) { return expr_detail::format_number(v); }

inline Json to_json(const Vector& v) { return Json(to_std(v)); }

inline Vector vector_from_json(const Json& j) { return to_eigen(j.get<std::vector<double>>()); }

// ------------------------------------------------------------ instances

/// {"name": str, "A": [[...]...], "b": [...], "objective": str,
///  "known_optimum": number (optional)}
inline Problem problem_from_json(const Json& j) {
  try {
    const auto rows = j.at("A").get<std::vector<std::vector<double>>>();
    const auto b = j.at("b").get<std::vector<double>>();
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows.front().size() : 0;
    Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].size() != n) throw DimensionError("ragged row in A", n, rows[i].size());
      for (std::size_t k = 0; k < n; ++k) a(i, k) = rows[i][k];
    }
    std::optional<double> opt;
    if (j.contains("known_optimum") && !j.at("known_optimum").is_null()) opt = j.at("known_optimum").get<double>();
    return make_problem(j.value("name", std::string("unnamed")), Instance(std::move(a), to_eigen(b)),
                        j.at("objective").get<std::string>(), opt);
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed instance JSON: ") + e.what());
  }
}

inline Json problem_to_json(const Problem& p) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < p.instance.A().rows(); ++i) rows.push_back(to_json(Vector(p.instance.A().row(i))));
  Json j = {{"name", p.name}, {"A", rows}, {"b", to_json(p.instance.b())}, {"objective", p.objective_source}};
  if (p.known_optimum) j["known_optimum"] = *p.known_optimum;
  return j;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << content;
  if (!out) throw IoError(path, "write failed");
}

inline Problem load_problem(const std::filesystem::path& path) {
  const auto text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw IoError(path, std::string("invalid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

// --------------------------------------------------------------- oracle

inline Json report_to_json(const OracleReport& r) {
  Json path = Json::array();
  for (auto j : r.best_path.one_based()) path.push_back(j);
  return {{"problem", r.problem},
          {"path_count", r.path_count},
          {"cells", r.cells_examined},
          {"samples_per_cell", r.samples_per_cell},
          {"best_value", r.best_value},
          {"best_point", to_json(r.best_point)},
          {"best_path", path}};
}

// ----------------------------------------------------------- experiments

enum class ExportFormat {
  summary_csv,  ///< problem,avg,mdn,sd,fbest,evals,mean_error
  trace_csv,    ///< problem,run,iter,best_so_far
  json,         ///< full summary including the trace matrix
};

inline std::string summary_csv(const ExperimentSummary& s) {
  std::string out = "problem,avg,mdn,sd,fbest,evals,mean_error\n";
  for (const auto& p : s.problems) {
    out += p.name + ',' + format_double(p.avg_best) + ',' + format_double(p.median_best) + ',' +
           format_double(p.sd_best) + ',' + format_double(p.f_best) + ',' + format_double(p.mean_eval_count) + ',' +
           (std::isnan(p.mean_error) ? std::string() : format_double(p.mean_error)) + '\n';
  }
  return out;
}

inline std::string trace_csv(const ExperimentSummary& s) {
  std::string out = "problem,run,iter,best_so_far\n";
  for (const auto& p : s.problems)
    for (std::size_t r = 0; r < p.traces.size(); ++r)
      for (std::size_t t = 0; t < p.traces[r].size(); ++t)
        out += p.name + ',' + std::to_string(r) + ',' + std::to_string(t + 1) + ',' + format_double(p.traces[r][t]) +
               '\n';
  return out;
}

inline Json config_to_json(const SolverConfig& c) {
  return {{"s_pop", c.s_pop},
          {"q", c.q},
          {"xi", c.xi},
          {"rho", c.rho},
          {"deposit", c.big_q},
          {"t_max", c.t_max},
          {"seed", c.seed},
          {"samples_per_iteration", c.samples_per_iteration},
          {"phase_two", c.phase_two == PhaseTwoMode::sampling ? "sampling" : "insertion_only"}};
}

inline SolverConfig config_from_json(const Json& j) {
  SolverConfig c;
  c.s_pop = j.at("s_pop").get<std::size_t>();
  c.q = j.at("q").get<double>();
  c.xi = j.at("xi").get<double>();
  c.rho = j.at("rho").get<double>();
  c.big_q = j.at("deposit").get<double>();
  c.t_max = j.at("t_max").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.samples_per_iteration = j.at("samples_per_iteration").get<std::size_t>();
  c.phase_two = j.at("phase_two").get<std::string>() == "sampling" ? PhaseTwoMode::sampling
                                                                   : PhaseTwoMode::insertion_only;
  return c;
}

inline Json summary_to_json(const ExperimentSummary& s) {
  Json problems = Json::array();
  for (const auto& p : s.problems) {
    problems.push_back({{"name", p.name},
                        {"known_optimum", p.known_optimum ? Json(*p.known_optimum) : Json(nullptr)},
                        {"avg_best", p.avg_best},
                        {"median_best", p.median_best},
                        {"sd_best", p.sd_best},
                        {"f_best", p.f_best},
                        {"worst_best", p.worst_best},
                        {"mean_eval_count", p.mean_eval_count},
                        {"mean_error", std::isnan(p.mean_error) ? Json(nullptr) : Json(p.mean_error)},
                        {"final_best", p.final_best},
                        {"eval_counts", p.eval_counts},
                        {"traces", p.traces}});
  }
  const double mse = s.mse();
  return {{"config", config_to_json(s.config)},
          {"runs", s.runs},
          {"base_seed", s.base_seed},
          {"mse", std::isnan(mse) ? Json(nullptr) : Json(mse)},
          {"problems", problems}};
}

inline ExperimentSummary summary_from_json(const Json& j) {
  ExperimentSummary s;
  s.config = config_from_json(j.at("config"));
  s.runs = j.at("runs").get<std::size_t>();
  s.base_seed = j.at("base_seed").get<std::uint64_t>();
  for (const auto& pj : j.at("problems")) {
    ProblemSummary p;
    p.name = pj.at("name").get<std::string>();
    if (!pj.at("known_optimum").is_null()) p.known_optimum = pj.at("known_optimum").get<double>();
    p.avg_best = pj.at("avg_best").get<double>();
    p.median_best = pj.at("median_best").get<double>();
    p.sd_best = pj.at("sd_best").get<double>();
    p.f_best = pj.at("f_best").get<double>();
    p.worst_best = pj.at("worst_best").get<double>();
    p.mean_eval_count = pj.at("mean_eval_count").get<double>();
    if (!pj.at("mean_error").is_null()) p.mean_error = pj.at("mean_error").get<double>();
    p.final_best = pj.at("final_best").get<std::vector<double>>();
    p.eval_counts = pj.at("eval_counts").get<std::vector<std::size_t>>();
    p.traces = pj.at("traces").get<std::vector<std::vector<double>>>();
    s.problems.push_back(std::move(p));
  }
  return s;
}

inline void export_summary(const ExperimentSummary& s, ExportFormat format, const std::filesystem::path& path) {
  switch (format) {
    case ExportFormat::summary_csv: write_file(path, summary_csv(s)); break;
    case ExportFormat::trace_csv: write_file(path, trace_csv(s)); break;
    case ExportFormat::json: write_file(path, summary_to_json(s).dump(1) + '\n'); break;
  }
}

}  // namespace freaco
