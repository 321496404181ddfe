#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace freaco {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument shapes disagree (vector length vs. matrix dimension, ...).
class DimensionError : public Error {
 public:
  DimensionError(std::string what, std::size_t expected, std::size_t actual)
      : Error(what + ": expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/// Value outside its admissible range (fuzzy entries outside [0,1], path
/// indices past n, bad solver parameters).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The system A phi x = b has no solution.
///
/// Carries the maximum solution that was tried and the (0-based) rows where
/// the composition misses b.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::vector<double> xbar, std::vector<std::size_t> rows)
      : Error(describe(rows)), xbar_(std::move(xbar)), rows_(std::move(rows)) {}

  const std::vector<double>& max_solution() const noexcept { return xbar_; }
  const std::vector<std::size_t>& violated_rows() const noexcept { return rows_; }

 private:
  static std::string describe(const std::vector<std::size_t>& rows) {
    std::ostringstream os;
    os << "infeasible fuzzy relational system; violated rows (1-based):";
    for (auto r : rows) os << ' ' << r + 1;
    return os.str();
  }

  std::vector<double> xbar_;
  std::vector<std::size_t> rows_;
};

/// Syntax or name-resolution failure in an objective expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Domain failure while evaluating an objective (ln of a non-positive value,
/// division by zero, ...). Carries the evaluation point.
class EvalError : public Error {
 public:
  EvalError(const std::string& msg, std::vector<double> point)
      : Error(msg + " at " + format(point)), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  static std::string format(const std::vector<double>& p) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ']';
    return os.str();
  }

  std::vector<double> point_;
};

/// Exhaustive path enumeration refused because |E| exceeds the cap.
/// The exact |E| is kept in decimal form since it may not fit 64 bits.
class CapExceededError : public Error {
 public:
  CapExceededError(std::string path_count, std::size_t cap)
      : Error("path space size " + path_count + " exceeds cap " + std::to_string(cap)),
        path_count_(std::move(path_count)),
        cap_(cap) {}

  const std::string& path_count() const noexcept { return path_count_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string path_count_;
  std::size_t cap_;
};

}  // namespace freaco
