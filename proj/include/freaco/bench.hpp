#pragma once

// Multi-run experiment harness: per-problem best-so-far statistics,
// iteration-averaged error against the known optimum, evaluation counts and
// full convergence traces. Runs execute in parallel; results are merged by
// (problem, run) index so the summary does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "freaco/aco.hpp"
#include "freaco/error.hpp"
#include "freaco/problems.hpp"

namespace freaco {

struct ExperimentSpec {
  std::vector<Problem> problems;
  std::size_t runs = 30;
  SolverConfig config;      ///< config.seed is ignored; run r uses base_seed + r
  std::uint64_t base_seed = 0;
  std::size_t threads = 0;  ///< 0 = hardware concurrency
};

struct ProblemSummary {
  std::string name;
  std::optional<double> known_optimum;
  double avg_best = 0.0;
  double median_best = 0.0;
  double sd_best = 0.0;  ///< sample standard deviation (divisor runs - 1)
  double f_best = 0.0;
  double worst_best = 0.0;
  double mean_eval_count = 0.0;
  /// Mean of (best-so-far - known optimum) over every iteration of every
  /// run; NaN when the optimum is unknown.
  double mean_error = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> final_best;          ///< per run
  std::vector<std::size_t> eval_counts;    ///< per run
  std::vector<std::vector<double>> traces;  ///< runs x t_max
};

struct ExperimentSummary {
  std::vector<ProblemSummary> problems;
  SolverConfig config;
  std::size_t runs = 0;
  std::uint64_t base_seed = 0;

  /// Mean of squared per-problem errors over problems with a known optimum.
  double mse() const {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& p : problems)
      if (!std::isnan(p.mean_error)) {
        total += p.mean_error * p.mean_error;
        ++count;
      }
    return count ? total / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
  }
};

/// A run failed; carries the problem name and 0-based run index.
class RunError : public Error {
 public:
  RunError(std::string problem, std::size_t run, const std::string& what)
      : Error(problem + " run " + std::to_string(run) + ": " + what), problem_(std::move(problem)), run_(run) {}

  const std::string& problem() const noexcept { return problem_; }
  std::size_t run() const noexcept { return run_; }

 private:
  std::string problem_;
  std::size_t run_;
};

namespace stats {

inline double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Even counts average the two central values.
inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

/// Sample standard deviation; 0 for fewer than two values.
inline double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace stats

/// Statistics for one problem from its per-run results (ordered by run index).
inline ProblemSummary summarize(const Problem& problem, const std::vector<RunResult>& results) {
  ProblemSummary s;
  s.name = problem.name;
  s.known_optimum = problem.known_optimum;
  for (const auto& r : results) {
    s.final_best.push_back(r.trace.back());
    s.eval_counts.push_back(r.eval_count);
    s.traces.push_back(r.trace);
  }
  s.avg_best = stats::mean(s.final_best);
  s.median_best = stats::median(s.final_best);
  s.sd_best = stats::sample_sd(s.final_best);
  if (!s.final_best.empty()) {
    s.f_best = *std::min_element(s.final_best.begin(), s.final_best.end());
    s.worst_best = *std::max_element(s.final_best.begin(), s.final_best.end());
  }
  double evals = 0.0;
  for (auto e : s.eval_counts) evals += static_cast<double>(e);
  s.mean_eval_count = s.eval_counts.empty() ? 0.0 : evals / static_cast<double>(s.eval_counts.size());
  if (s.known_optimum) {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& tr : s.traces)
      for (double v : tr) {
        total += v - *s.known_optimum;
        ++count;
      }
    s.mean_error = count ? total / static_cast<double>(count) : 0.0;
  }
  return s;
}

/// Names of problems whose f_best lies more than `tol` below the known
/// optimum. A solver cannot beat a true optimum, so each entry points at a
/// recorded optimum that is not the true minimum of the stored data.
inline std::vector<std::string> optimum_violations(const ExperimentSummary& s, double tol = 1e-6) {
  std::vector<std::string> out;
  for (const auto& p : s.problems)
    if (p.known_optimum && p.f_best < *p.known_optimum - tol) out.push_back(p.name);
  return out;
}

inline ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  if (spec.runs < 1) throw RangeError("runs must be >= 1");
  spec.config.validate();
  const std::size_t n_jobs = spec.problems.size() * spec.runs;
  std::vector<RunResult> results(n_jobs);
  std::vector<std::exception_ptr> errors(n_jobs);

  std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<std::size_t>(1, std::min(threads, n_jobs));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < n_jobs;) {
      const auto& problem = spec.problems[job / spec.runs];
      SolverConfig cfg = spec.config;
      cfg.seed = spec.base_seed + job % spec.runs;
      try {
        results[job] = run(problem, cfg);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t job = 0; job < n_jobs; ++job) {
    if (!errors[job]) continue;
    const auto& name = spec.problems[job / spec.runs].name;
    try {
      std::rethrow_exception(errors[job]);
    } catch (const std::exception& e) {
      throw RunError(name, job % spec.runs, e.what());
    }
  }

  ExperimentSummary summary;
  summary.config = spec.config;
  summary.runs = spec.runs;
  summary.base_seed = spec.base_seed;
  for (std::size_t p = 0; p < spec.problems.size(); ++p) {
    std::vector<RunResult> slice(std::make_move_iterator(results.begin() + p * spec.runs),
                                 std::make_move_iterator(results.begin() + (p + 1) * spec.runs));
    summary.problems.push_back(summarize(spec.problems[p], slice));
  }
  return summary;
}

}  // namespace freaco
