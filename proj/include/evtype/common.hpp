#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace evtype {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kSchemaVersion = 1;

// Error taxonomy maps onto CLI exit codes: UsageError -> 1, DataError -> 2,
// DivergenceError -> 3.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (ragged vectors, bad syntax, ...).
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// Cross-reference violations: unknown ids, duplicate ids, broken invariants.
class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

// Name or id collisions in the type registry.
class ConflictError : public DataError {
 public:
  using DataError::DataError;
};

// Dimension mismatch between tensors.
class ShapeError : public DataError {
 public:
  using DataError::DataError;
};

// Training produced a non-finite loss.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear-interpolation quantile over an unsorted sample, q in [0, 1].
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw UsageError("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw UsageError("quantile: q outside [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double h = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= xs.size()) return xs.back();
  const double frac = h - static_cast<double>(lo);
  return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace evtype
