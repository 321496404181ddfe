#pragma once

// Brute-force reference machinery, independent of the ant colony solver:
// exhaustive FRE-path enumeration, per-cell dense search, and a generator of
// random systems that are feasible by construction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "freaco/error.hpp"
#include "freaco/fre_core.hpp"
#include "freaco/problems.hpp"
#include "freaco/rng.hpp"

namespace freaco {

inline constexpr std::size_t kDefaultPathCap = 1'000'000;

struct OracleReport {
  std::string problem;
  std::string path_count;  ///< |E| in decimal
  double best_value = std::numeric_limits<double>::infinity();
  Vector best_point;
  FrePath best_path;
  std::size_t cells_examined = 0;
  std::size_t samples_per_cell = 0;
};

/// All paths in lexicographic order of (e(1), ..., e(m)).
inline std::vector<FrePath> enumerate_paths(const CandidateSets& sets, std::size_t cap = kDefaultPathCap) {
  const BigInt size = path_space_size(sets);
  if (size > cap) throw CapExceededError(size.str(), cap);
  const auto m = sets.rows();
  std::vector<FrePath> out;
  out.reserve(static_cast<std::size_t>(size));
  if (m == 0) return out;
  std::vector<std::size_t> digit(m, 0);
  for (;;) {
    std::vector<std::size_t> cols(m);
    for (std::size_t i = 0; i < m; ++i) cols[i] = sets.jbar[i][digit[i]];
    out.emplace_back(std::move(cols));
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++digit[i] < sets.jbar[i].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
  }
}

namespace oracle_detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct CellBest {
  double value;
  Vector point;
};

/// Uniform sampling of the box followed by compass search on the best sample.
/// Each failed sweep over all coordinates halves the step.
template <typename Objective>
CellBest search_cell(const Cell& cell, Objective&& f, std::size_t samples, std::size_t refine_steps, Rng& rng) {
  const auto n = cell.lower.size();
  CellBest best{std::numeric_limits<double>::infinity(), cell.lower};
  Vector x(n);
  for (std::size_t s = 0; s < std::max<std::size_t>(samples, 1); ++s) {
    for (Eigen::Index j = 0; j < n; ++j)
      x(j) = std::min(cell.upper(j), cell.lower(j) + (cell.upper(j) - cell.lower(j)) * rng.uniform01());
    const double v = f(x);
    if (v < best.value) best = {v, x};
  }

  double step = 0.5 * (cell.upper - cell.lower).maxCoeff();
  if (step <= 0.0) return best;
  constexpr std::size_t kMaxSweepsPerStep = 10'000;
  for (std::size_t halvings = 0; halvings < refine_steps; ++halvings, step *= 0.5) {
    for (std::size_t sweep = 0; sweep < kMaxSweepsPerStep; ++sweep) {
      bool improved = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (double dir : {-1.0, 1.0}) {
          Vector y = best.point;
          y(j) = std::clamp(y(j) + dir * step, cell.lower(j), cell.upper(j));
          if (y(j) == best.point(j)) continue;
          const double v = f(y);
          if (v < best.value) {
            best = {v, std::move(y)};
            improved = true;
            break;
          }
        }
      }
      if (!improved) break;
    }
  }
  return best;
}

}  // namespace oracle_detail

/// Searches every cell of the feasible region and reports the best point
/// found. Cells are visited in lexicographic path order; a later cell
/// replaces the incumbent only when strictly better.
inline OracleReport reference_optimum(const Problem& problem, std::size_t samples_per_cell,
                                      std::size_t refine_steps, Rng& rng, std::size_t cap = kDefaultPathCap) {
  const Instance& inst = problem.instance;
  const MaxSolution xbar = compute_max_solution(inst);
  require_feasible(inst, xbar);
  const CandidateSets sets = compute_candidate_sets(inst, xbar);
  const auto paths = enumerate_paths(sets, cap);

  OracleReport report;
  report.problem = problem.name;
  report.path_count = path_space_size(sets).str();
  report.samples_per_cell = samples_per_cell;
  report.best_point = xbar.xbar;

  const std::uint64_t base = static_cast<std::uint64_t>(rng.uniform01() * 0x1.0p53);
  for (std::size_t c = 0; c < paths.size(); ++c) {
    Rng cell_rng(oracle_detail::splitmix64(base + c));
    const Cell cell = cell_of(paths[c], inst, xbar);
    auto found = oracle_detail::search_cell(cell, problem.objective, samples_per_cell, refine_steps, cell_rng);
    if (found.value < report.best_value) {
      report.best_value = found.value;
      report.best_point = std::move(found.point);
      report.best_path = paths[c];
    }
    ++report.cells_examined;
  }
  return report;
}

struct PlantedInstance {
  Instance instance;
  Vector planted;
};

/// Plants x* uniform in [0,1]^n, draws A uniform in [0,1] with each entry
/// zeroed with probability 1 - density, and sets b = A phi x*.
/// Draw order: x* coordinates, then per entry (row-major) a mask draw and a
/// value draw.
inline PlantedInstance random_planted_instance(std::size_t m, std::size_t n, double density, Rng& rng) {
  if (m < 1 || n < 1) throw RangeError("random instance needs m, n >= 1");
  if (!(density > 0.0 && density <= 1.0)) throw RangeError("density must be in (0, 1]");
  Vector planted(static_cast<Eigen::Index>(n));
  for (auto& v : planted) v = rng.uniform01();
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const bool keep = rng.uniform01() < density;
      const double v = rng.uniform01();
      a(i, j) = keep ? v : 0.0;
    }
  Vector b(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) v = std::max(v, std::min(a(i, j), planted(j)));
    b(i) = v;
  }
  return {Instance(std::move(a), std::move(b)), std::move(planted)};
}

inline Instance random_feasible_instance(std::size_t m, std::size_t n, double density, Rng& rng) {
  return random_planted_instance(m, n, density, rng).instance;
}

}  // namespace freaco
