#pragma once

// Slow, independent reference implementations used to cross-check the
// library. Plain nested vectors and loops; nothing here calls into the
// library's own algorithms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "freaco/fre_core.hpp"

namespace naive {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Mat rows_of(const freaco::Matrix& a) {
  Mat out(a.rows(), Vec(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

inline Vec compose(const Mat& a, const Vec& x) {
  Vec out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] = std::max(out[i], std::min(a[i][j], x[j]));
  return out;
}

inline bool solves(const Mat& a, const Vec& b, const Vec& x, double eps = 1e-9) {
  const Vec y = compose(a, x);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::abs(y[i] - b[i]) > eps) return false;
  return true;
}

/// Greatest x with A phi x <= b, built one coordinate at a time: x_j is the
/// largest value that keeps every min(a_ij, x_j) <= b_i.
inline Vec greatest_subsolution(const Mat& a, const Vec& b) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  Vec x(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::min(a[i][j], x[j]) > b[i]) x[j] = b[i];
  return x;
}

/// Columns j of row i where min(a_ij, xbar_j) reaches b_i.
inline std::vector<std::vector<std::size_t>> binding_columns(const Mat& a, const Vec& b, const Vec& xbar) {
  std::vector<std::vector<std::size_t>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < xbar.size(); ++j)
      if (std::abs(std::min(a[i][j], xbar[j]) - b[i]) <= 1e-9) out[i].push_back(j);
  return out;
}

/// Every selection of one column per row, by recursion.
inline void for_each_selection(const std::vector<std::vector<std::size_t>>& sets,
                               const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sets.size()) {
      visit(cur);
      return;
    }
    for (auto j : sets[i]) {
      cur.push_back(j);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

inline Vec lower_corner(const std::vector<std::size_t>& sel, const Vec& b, std::size_t n) {
  Vec x(n, 0.0);
  for (std::size_t i = 0; i < sel.size(); ++i) x[sel[i]] = std::max(x[sel[i]], b[i]);
  return x;
}

/// Calls visit on every point of the grid {0, 1/k, ..., 1}^n.
inline void for_each_grid_point(std::size_t n, int k, const std::function<void(const Vec&)>& visit) {
  std::vector<int> idx(n, 0);
  Vec x(n, 0.0);
  for (;;) {
    visit(x);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (++idx[j] <= k) {
        x[j] = static_cast<double>(idx[j]) / k;
        break;
      }
      idx[j] = 0;
      x[j] = 0.0;
    }
    if (j == n) return;
  }
}

inline Vec vec(const freaco::Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace naive
