#pragma once

// Two-phase ant colony solver for min f(x) s.t. A phi x = b, x in [0,1]^n.
//
// Phase I: ants walk the candidate matrix, picking one candidate column per
// row with probability proportional to pheromone; each walk (FRE-path) names
// a convex cell [x_lower(e), xbar] of the feasible region.
// Phase II: a ranked solution archive (continuous ACO) samples Gaussian
// kernels around archive points, clamped back into the parent's cell, so
// every generated point is feasible without any feasibility check.
// Archive quality is fed back to Phase I as pheromone on the archive paths.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freaco/error.hpp"
#include "freaco/fre_core.hpp"
#include "freaco/problems.hpp"
#include "freaco/rng.hpp"

namespace freaco {

/// What Phase II does at iterations t > 1.
enum class PhaseTwoMode {
  /// One Phase-I cell sample plus `samples_per_iteration` Gaussian samples.
  sampling,
  /// Ablation: no Gaussian sampling; the same number of new solutions all come
  /// from fresh Phase-I paths sampled uniformly in their cells.
  insertion_only,
};

struct SolverConfig {
  std::size_t s_pop = 50;     ///< archive size
  double q = 0.0125;          ///< locality of the rank weights
  double xi = 1.0;            ///< kernel width factor (higher = slower convergence)
  double rho = 0.5;           ///< pheromone evaporation rate, in [0,1)
  double big_q = 1.0;         ///< pheromone deposit constant
  std::size_t t_max = 100;    ///< iterations
  std::uint64_t seed = 0;
  std::size_t samples_per_iteration = 2;  ///< Gaussian samples per iteration t > 1
  PhaseTwoMode phase_two = PhaseTwoMode::sampling;

  void validate() const {
    if (s_pop < 2) throw RangeError("s_pop must be >= 2");
    if (!(q > 0.0)) throw RangeError("q must be > 0");
    if (!(xi > 0.0)) throw RangeError("xi must be > 0");
    if (!(rho >= 0.0 && rho < 1.0)) throw RangeError("rho must be in [0,1)");
    if (!(big_q > 0.0)) throw RangeError("deposit constant Q must be > 0");
    if (t_max < 1) throw RangeError("t_max must be >= 1");
  }

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Pheromone on candidate-matrix entries; zero outside the candidate sets.
class PheromoneMatrix {
 public:
  PheromoneMatrix(Matrix tau, CandidateSets support) : tau_(std::move(tau)), support_(std::move(support)) {}

  const Matrix& values() const noexcept { return tau_; }
  double operator()(std::size_t i, std::size_t j) const { return tau_(i, j); }
  const CandidateSets& support() const noexcept { return support_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(tau_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(tau_.cols()); }

  void add(std::size_t i, std::size_t j, double amount) {
    assert(support_.contains(i, j));
    tau_(i, j) += amount;
  }
  void scale(double factor) { tau_ *= factor; }

  /// Rows whose total fell below 1e-12 are reset to 1 on their candidate
  /// columns; probabilities would otherwise divide by zero.
  void apply_degeneracy_guard() {
    for (std::size_t i = 0; i < rows(); ++i) {
      if (tau_.row(i).sum() >= 1e-12) continue;
      tau_.row(i).setZero();
      for (auto j : support_.jbar[i]) tau_(i, j) = 1.0;
    }
  }

 private:
  Matrix tau_;
  CandidateSets support_;
};

struct ArchiveSolution {
  Vector x;   ///< feasible point
  Vector lb;  ///< lower corner of the cell containing x
  FrePath e;  ///< path that generated lb
  double f = 0.0;
};

inline bool identical(const ArchiveSolution& a, const ArchiveSolution& b) {
  return a.f == b.f && a.e == b.e && a.x.size() == b.x.size() && a.lb.size() == b.lb.size() &&
         (a.x.array() == b.x.array()).all() && (a.lb.array() == b.lb.array()).all();
}

/// Solutions ranked by objective value, best first. Ties keep insertion order.
class Archive {
 public:
  Archive() = default;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const ArchiveSolution& operator[](std::size_t rank) const { return entries_[rank]; }
  const ArchiveSolution& best() const { return entries_.front(); }
  const std::vector<ArchiveSolution>& entries() const noexcept { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Appends, re-ranks, and drops the worst entries beyond `capacity`.
  void insert(ArchiveSolution s, std::size_t capacity) {
    entries_.push_back(std::move(s));
    rank_and_truncate(capacity);
  }

  void rank_and_truncate(std::size_t capacity) {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const ArchiveSolution& a, const ArchiveSolution& b) { return a.f < b.f; });
    if (entries_.size() > capacity) entries_.resize(capacity);
  }

  void push_unranked(ArchiveSolution s) { entries_.push_back(std::move(s)); }

 private:
  std::vector<ArchiveSolution> entries_;
};

struct RunResult {
  ArchiveSolution best;
  std::vector<double> trace;  ///< best-so-far objective after each iteration
  std::size_t eval_count = 0;
  std::uint64_t seed = 0;
  SolverConfig config;
  Archive archive;  ///< final archive
};

inline bool identical(const RunResult& a, const RunResult& b) {
  if (!(identical(a.best, b.best) && a.trace == b.trace && a.eval_count == b.eval_count &&
        a.seed == b.seed && a.config == b.config && a.archive.size() == b.archive.size()))
    return false;
  for (std::size_t k = 0; k < a.archive.size(); ++k)
    if (!identical(a.archive[k], b.archive[k])) return false;
  return true;
}

// ---------------------------------------------------------------- Phase I

inline PheromoneMatrix init_pheromone(const CandidateSets& sets) {
  Matrix tau = Matrix::Zero(static_cast<Eigen::Index>(sets.rows()), static_cast<Eigen::Index>(sets.n));
  for (std::size_t i = 0; i < sets.rows(); ++i)
    for (auto j : sets.jbar[i]) tau(i, j) = 1.0;
  return PheromoneMatrix(std::move(tau), sets);
}

/// p_ij = tau_ij / sum_k tau_ik. Rows summing to zero are treated as freshly
/// initialized (uniform over the candidate columns).
inline Matrix probability_matrix(const PheromoneMatrix& tau) {
  Matrix p = tau.values();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double total = p.row(i).sum();
    if (total >= 1e-12) {
      p.row(i) /= total;
    } else {
      const auto& cols = tau.support().jbar[static_cast<std::size_t>(i)];
      p.row(i).setZero();
      for (auto j : cols) p(i, j) = 1.0 / static_cast<double>(cols.size());
    }
  }
  return p;
}

/// Builds `count` paths; row i of each path is drawn from row i of `p`
/// restricted to jbar[i] (one uniform draw per row, rows in order).
inline std::vector<FrePath> construct_paths(const Matrix& p, const CandidateSets& sets,
                                            std::size_t count, Rng& rng) {
  std::vector<FrePath> paths;
  paths.reserve(count);
  std::vector<double> w;
  for (std::size_t l = 0; l < count; ++l) {
    std::vector<std::size_t> cols(sets.rows());
    for (std::size_t i = 0; i < sets.rows(); ++i) {
      const auto& cand = sets.jbar[i];
      w.resize(cand.size());
      for (std::size_t k = 0; k < cand.size(); ++k) w[k] = p(i, cand[k]);
      cols[i] = cand[rng.categorical(w)];
    }
    paths.emplace_back(std::move(cols));
  }
  return paths;
}

// --------------------------------------------------------------- Phase II

/// One solution drawn uniformly (independently per coordinate) from the
/// path's cell.
template <typename Objective>
ArchiveSolution cell_solution(const FrePath& path, const Instance& inst, const MaxSolution& xbar,
                              Objective&& objective, Rng& rng) {
  const Cell cell = cell_of(path, inst, xbar);
  Vector x(cell.lower.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double u = rng.uniform01();
    x(j) = std::min(cell.upper(j), cell.lower(j) + (cell.upper(j) - cell.lower(j)) * u);
  }
  const double f = objective(x);
  return {std::move(x), cell.lower, path, f};
}

/// Initial archive: one uniform point per path cell, ranked ascending by f.
template <typename Objective>
Archive init_archive(const std::vector<FrePath>& paths, const Instance& inst, const MaxSolution& xbar,
                     Objective&& objective, Rng& rng) {
  Archive archive;
  for (const auto& path : paths) archive.push_unranked(cell_solution(path, inst, xbar, objective, rng));
  archive.rank_and_truncate(paths.size());
  return archive;
}

/// Rank weights w_l = exp(-(l-1)^2 / (2 q^2 s^2)) / (sqrt(2 pi) q s), l = 1..s.
inline std::vector<double> weights(std::size_t s_pop, double q) {
  std::vector<double> w(s_pop);
  const double width = q * static_cast<double>(s_pop);
  const double scale = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * width);
  for (std::size_t l = 0; l < s_pop; ++l) {
    const double d = static_cast<double>(l) / width;
    w[l] = scale * std::exp(-0.5 * d * d);
  }
  return w;
}

/// Archive position (0-based; rank = position + 1) drawn with p_l = w_l / sum w.
inline std::size_t select_rank(std::span<const double> w, Rng& rng) { return rng.categorical(w); }

/// Kernel width for coordinate j around the archive entry at `pos`:
/// xi * mean absolute distance to the other archive points.
inline double sigma(const Archive& archive, std::size_t pos, std::size_t j, double xi) {
  if (archive.size() < 2) return 0.0;
  const auto jj = static_cast<Eigen::Index>(j);
  const double centre = archive[pos].x(jj);
  double total = 0.0;
  for (const auto& s : archive) total += std::abs(s.x(jj) - centre);
  return xi * total / static_cast<double>(archive.size() - 1);
}

/// Gaussian sample around archive[pos], clamped into that entry's cell.
/// The new solution inherits the parent's lb and path. One normal deviate is
/// drawn per coordinate even where sigma is zero.
template <typename Objective>
ArchiveSolution sample_solution(const Archive& archive, std::size_t pos, double xi, const MaxSolution& xbar,
                                Objective&& objective, Rng& rng) {
  const auto& parent = archive[pos];
  Vector x(parent.x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double width = sigma(archive, pos, static_cast<std::size_t>(j), xi);
    const double z = rng.normal();
    x(j) = parent.x(j) + width * z;
  }
  x = clamp_to_cell(x, Cell{parent.lb, xbar.xbar});
  const double f = objective(x);
  return {std::move(x), parent.lb, parent.e, f};
}

// ------------------------------------------------------ pheromone update

inline double deposit_amount(double f, double big_q) { return big_q * std::exp(-std::clamp(f, -700.0, 700.0)); }

inline void deposit(PheromoneMatrix& tau, const ArchiveSolution& sol, double big_q) {
  const double amount = deposit_amount(sol.f, big_q);
  for (std::size_t i = 0; i < sol.e.size(); ++i) tau.add(i, sol.e[i], amount);
}

inline void evaporate(PheromoneMatrix& tau, double rho) { tau.scale(1.0 - rho); }

/// One deposit per archive solution, then one evaporation, then the guard.
inline void update_pheromone(PheromoneMatrix& tau, const Archive& archive, double big_q, double rho) {
  for (const auto& s : archive) deposit(tau, s, big_q);
  evaporate(tau, rho);
  tau.apply_degeneracy_guard();
}

// ----------------------------------------------------------- outer loop

/// State handed to a run observer after every iteration.
struct IterationView {
  std::size_t t;  ///< 1-based iteration
  const Archive& archive;
  const PheromoneMatrix& tau;
  const MaxSolution& xbar;
  const Instance& instance;
};

using RunObserver = std::function<void(const IterationView&)>;

/// Runs the solver. Iteration 1 builds s_pop paths, fills the archive and
/// updates pheromone; every later iteration adds one Phase-I cell sample and
/// `samples_per_iteration` Gaussian samples (drawn against the archive as it
/// stood before the round), keeps the s_pop best and updates pheromone.
///
/// Throws InfeasibleError if the system has no solution.
inline RunResult run(const Problem& problem, const SolverConfig& config, const RunObserver& observer = {}) {
  config.validate();
  const Instance& inst = problem.instance;
  const MaxSolution xbar = compute_max_solution(inst);
  require_feasible(inst, xbar);
  const CandidateSets sets = compute_candidate_sets(inst, xbar);

  std::size_t evals = 0;
  auto objective = [&](const Vector& x) {
    ++evals;
    return problem.objective(x);
  };

  Rng rng(config.seed);
  PheromoneMatrix tau = init_pheromone(sets);
  const std::size_t cap = config.s_pop;

  auto paths = construct_paths(probability_matrix(tau), sets, cap, rng);
  Archive archive = init_archive(paths, inst, xbar, objective, rng);
  update_pheromone(tau, archive, config.big_q, config.rho);

  RunResult result;
  result.trace.reserve(config.t_max);
  result.trace.push_back(archive.best().f);
  if (observer) observer({1, archive, tau, xbar, inst});

  const auto w = weights(cap, config.q);
  const std::size_t m2 = config.samples_per_iteration;
  const std::size_t insertions = config.phase_two == PhaseTwoMode::sampling ? 1 : 1 + m2;

  for (std::size_t t = 2; t <= config.t_max; ++t) {
    for (std::size_t k = 0; k < insertions; ++k) {
      const auto path = construct_paths(probability_matrix(tau), sets, 1, rng).front();
      archive.insert(cell_solution(path, inst, xbar, objective, rng), cap);
    }
    if (config.phase_two == PhaseTwoMode::sampling) {
      std::vector<ArchiveSolution> fresh;
      fresh.reserve(m2);
      for (std::size_t k = 0; k < m2; ++k) {
        const auto pos = select_rank(w, rng);
        fresh.push_back(sample_solution(archive, pos, config.xi, xbar, objective, rng));
      }
      for (auto& s : fresh) archive.push_unranked(std::move(s));
      archive.rank_and_truncate(cap);
    }
    update_pheromone(tau, archive, config.big_q, config.rho);
    result.trace.push_back(archive.best().f);
    if (observer) observer({t, archive, tau, xbar, inst});
  }

  result.best = archive.best();
  result.eval_count = evals;
  result.seed = config.seed;
  result.config = config;
  result.archive = std::move(archive);
  return result;
}

}  // namespace freaco
