#pragma once

// Structure of max-min fuzzy relational equations A phi x = b:
// composition, maximum solution, candidate sets, FRE-paths and the convex
// cells [x_lower(e), xbar] whose union is the feasible region.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "freaco/error.hpp"

namespace freaco {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BigInt = boost::multiprecision::cpp_int;

/// Equality tolerance for "min(a_ij, xbar_j) = b_i" and feasibility tests.
inline constexpr double kEqTol = 1e-9;

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

inline Vector to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// A fuzzy relational system: an m x n matrix A and a right-hand side b,
/// all entries in [0,1]. Immutable after construction.
class Instance {
 public:
  Instance(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() < 1 || a_.cols() < 1) throw RangeError("fuzzy matrix must be at least 1x1");
    if (a_.rows() != b_.size())
      throw DimensionError("length of b must equal rows of A", static_cast<std::size_t>(a_.rows()),
                           static_cast<std::size_t>(b_.size()));
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (!in_unit(b_(i))) throw RangeError("b entry outside [0,1] at row " + std::to_string(i + 1));
      for (Eigen::Index j = 0; j < a_.cols(); ++j)
        if (!in_unit(a_(i, j)))
          throw RangeError("A entry outside [0,1] at (" + std::to_string(i + 1) + ", " +
                           std::to_string(j + 1) + ")");
    }
  }

  /// Row-list convenience constructor (used by the builtin problem tables).
  Instance(std::initializer_list<std::initializer_list<double>> rows,
           std::initializer_list<double> rhs)
      : Instance(from_rows(rows), to_eigen(std::vector<double>(rhs))) {}

  const Matrix& A() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(a_.cols()); }

 private:
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const auto m = rows.size();
    const auto n = m ? rows.begin()->size() : 0;
    Matrix a(m, n);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n) throw DimensionError("ragged fuzzy matrix row", n, r.size());
      std::size_t j = 0;
      for (double v : r) a(i, j++) = v;
      ++i;
    }
    return a;
  }

  Matrix a_;
  Vector b_;
};

/// The componentwise-greatest point of [0,1]^n allowed by A and b.
struct MaxSolution {
  Vector xbar;
};

/// jbar[i] = columns j with min(a_ij, xbar_j) = b_i, ascending, 0-based.
struct CandidateSets {
  std::vector<std::vector<std::size_t>> jbar;
  std::size_t n = 0;

  std::size_t rows() const noexcept { return jbar.size(); }
  bool contains(std::size_t i, std::size_t j) const {
    return std::binary_search(jbar[i].begin(), jbar[i].end(), j);
  }
};

/// m_ij = b_i on candidate columns, 0 elsewhere.
struct CandidateMatrix {
  Matrix m;
};

/// One candidate column per row (0-based column indices).
class FrePath {
 public:
  FrePath() = default;
  explicit FrePath(std::vector<std::size_t> cols) : cols_(std::move(cols)) {}

  /// Build from the 1-based notation e = [j1, ..., jm].
  static FrePath from_one_based(const std::vector<std::size_t>& e) {
    std::vector<std::size_t> c;
    c.reserve(e.size());
    for (auto j : e) {
      if (j == 0) throw RangeError("1-based path index must be >= 1");
      c.push_back(j - 1);
    }
    return FrePath(std::move(c));
  }

  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> e(cols_);
    for (auto& j : e) ++j;
    return e;
  }

  std::size_t size() const noexcept { return cols_.size(); }
  std::size_t operator[](std::size_t i) const { return cols_[i]; }
  const std::vector<std::size_t>& columns() const noexcept { return cols_; }

  friend bool operator==(const FrePath&, const FrePath&) = default;
  friend auto operator<=>(const FrePath&, const FrePath&) = default;

 private:
  std::vector<std::size_t> cols_;
};

/// Closed box [lower, upper], a convex subset of the feasible region.
struct Cell {
  Vector lower;
  Vector upper;

  bool contains(const Vector& x, double eps = kEqTol) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (x(j) < lower(j) - eps || x(j) > upper(j) + eps) return false;
    return true;
  }
};

/// (A phi x)_i = max_j min(a_ij, x_j).
inline Vector max_min_compose(const Instance& inst, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != inst.cols())
    throw DimensionError("point length must equal columns of A", inst.cols(),
                         static_cast<std::size_t>(x.size()));
  const auto& a = inst.A();
  Vector out(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) v = std::max(v, std::min(a(i, j), x(j)));
    out(i) = v;
  }
  return out;
}

/// Infinity-norm distance between A phi x and b.
inline double residual(const Instance& inst, const Vector& x) {
  return (max_min_compose(inst, x) - inst.b()).cwiseAbs().maxCoeff();
}

/// 0-based rows where |(A phi x)_i - b_i| > eps.
inline std::vector<std::size_t> violated_rows(const Instance& inst, const Vector& x,
                                              double eps = kEqTol) {
  const Vector c = max_min_compose(inst, x);
  std::vector<std::size_t> rows;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i) - inst.b()(i)) > eps) rows.push_back(static_cast<std::size_t>(i));
  return rows;
}

/// xbar_j = min{b_i : a_ij > b_i}, or 1 when no row has a_ij > b_i.
/// The strict comparison is exact (no tolerance).
inline MaxSolution compute_max_solution(const Instance& inst) {
  const auto& a = inst.A();
  const auto& b = inst.b();
  Vector xbar = Vector::Ones(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) > b(i)) xbar(j) = std::min(xbar(j), b(i));
  return {std::move(xbar)};
}

/// The system is solvable iff its maximum solution solves it.
inline bool is_feasible(const Instance& inst, double eps = kEqTol) {
  return residual(inst, compute_max_solution(inst).xbar) <= eps;
}

/// Throws InfeasibleError (with xbar and the violated rows) unless feasible.
inline void require_feasible(const Instance& inst, const MaxSolution& xbar, double eps = kEqTol) {
  auto rows = violated_rows(inst, xbar.xbar, eps);
  if (!rows.empty()) throw InfeasibleError(to_std(xbar.xbar), std::move(rows));
}

inline CandidateSets compute_candidate_sets(const Instance& inst, const MaxSolution& xbar,
                                            double eps = kEqTol) {
  const auto& a = inst.A();
  const auto& b = inst.b();
  if (static_cast<std::size_t>(xbar.xbar.size()) != inst.cols())
    throw DimensionError("maximum solution length must equal columns of A", inst.cols(),
                         static_cast<std::size_t>(xbar.xbar.size()));
  CandidateSets sets;
  sets.n = inst.cols();
  sets.jbar.resize(inst.rows());
  std::vector<std::size_t> empty_rows;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(std::min(a(i, j), xbar.xbar(j)) - b(i)) <= eps)
        sets.jbar[i].push_back(static_cast<std::size_t>(j));
    if (sets.jbar[i].empty()) empty_rows.push_back(static_cast<std::size_t>(i));
  }
  if (!empty_rows.empty()) throw InfeasibleError(to_std(xbar.xbar), std::move(empty_rows));
  return sets;
}

inline CandidateMatrix candidate_matrix(const CandidateSets& sets, const Vector& b) {
  if (static_cast<std::size_t>(b.size()) != sets.rows())
    throw DimensionError("length of b must equal number of candidate sets", sets.rows(),
                         static_cast<std::size_t>(b.size()));
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(sets.rows()), static_cast<Eigen::Index>(sets.n));
  for (std::size_t i = 0; i < sets.rows(); ++i)
    for (auto j : sets.jbar[i]) m(i, j) = b(i);
  return {std::move(m)};
}

/// |E| = prod_i |jbar[i]|, exact.
inline BigInt path_space_size(const CandidateSets& sets) {
  BigInt size = 1;
  for (const auto& s : sets.jbar) size *= s.size();
  return size;
}

inline bool is_valid_path(const FrePath& path, const CandidateSets& sets) {
  if (path.size() != sets.rows()) return false;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (!sets.contains(i, path[i])) return false;
  return true;
}

/// Minimal candidate solution: x_j = max{b_i : e(i) = j}, 0 for unused columns.
inline Vector path_to_candidate(const FrePath& path, const Vector& b, std::size_t n) {
  if (path.size() != static_cast<std::size_t>(b.size()))
    throw DimensionError("path length must equal length of b", static_cast<std::size_t>(b.size()),
                         path.size());
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto j = path[i];
    if (j >= n)
      throw RangeError("path column " + std::to_string(j + 1) + " at row " + std::to_string(i + 1) +
                       " exceeds n = " + std::to_string(n));
    x(j) = std::max(x(j), b(i));
  }
  return x;
}

inline Cell cell_of(const FrePath& path, const Instance& inst, const MaxSolution& xbar) {
  Cell cell{path_to_candidate(path, inst.b(), inst.cols()), xbar.xbar};
  assert(((cell.lower.array() <= cell.upper.array() + kEqTol).all()) &&
         "candidate lower bound exceeds the maximum solution");
  return cell;
}

/// Componentwise projection onto the cell: min(max(x_j, lower_j), upper_j).
inline Vector clamp_to_cell(const Vector& x, const Cell& cell) {
  if (x.size() != cell.lower.size())
    throw DimensionError("point length must equal cell dimension",
                         static_cast<std::size_t>(cell.lower.size()), static_cast<std::size_t>(x.size()));
  return x.cwiseMax(cell.lower).cwiseMin(cell.upper);
}

}  // namespace freaco
