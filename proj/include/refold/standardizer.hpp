#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "refold/error.hpp"
#include "refold/matrix.hpp"

namespace refold {

/// Per-dimension mean and standard deviation of one standardization.
struct StandardizerStep {
  std::vector<double> mean;
  std::vector<double> stddev;

  std::size_t dim() const noexcept { return mean.size(); }

  friend bool operator==(const StandardizerStep&, const StandardizerStep&) = default;
};

/// A standard deviation at or below this fraction of |mean| is rounding noise
/// of a constant column, not spread.
inline constexpr double kDegenerateRelTol = 1e-12;

/// True when a fitted deviation cannot be divided by: non-finite, zero, or
/// negligible next to the column mean. Such deviations are stored as 1.
inline bool is_degenerate_stddev(double stddev, double mean) noexcept {
  return !std::isfinite(stddev) || !(stddev > kDegenerateRelTol * std::fabs(mean));
}

namespace detail {

/// Column means and sample deviations (divisor N-1), accumulated row by row
/// in index order. Returns false if any mean or raw deviation is non-finite.
inline bool fit_columns(const Matrix& x, StandardizerStep& step) {
  const std::size_t n = x.rows();
  const std::size_t dim = x.cols();
  step.mean.assign(dim, 0.0);
  step.stddev.assign(dim, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.row(i);
    for (std::size_t d = 0; d < dim; ++d) step.mean[d] += r[d];
  }
  for (double& m : step.mean) m /= static_cast<double>(n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.row(i);
    for (std::size_t d = 0; d < dim; ++d) {
      const double dev = r[d] - step.mean[d];
      step.stddev[d] += dev * dev;
    }
  }

  bool finite = true;
  for (std::size_t d = 0; d < dim; ++d) {
    step.stddev[d] = std::sqrt(step.stddev[d] / static_cast<double>(n - 1));
    if (!std::isfinite(step.mean[d]) || !std::isfinite(step.stddev[d])) finite = false;
    if (is_degenerate_stddev(step.stddev[d], step.mean[d])) step.stddev[d] = 1.0;
  }
  return finite;
}

inline void standardize_in_place(std::span<double> x, const StandardizerStep& step) noexcept {
  for (std::size_t d = 0; d < x.size(); ++d) {
    x[d] = x[d] - step.mean[d];
    x[d] = x[d] / step.stddev[d];
  }
}

}  // namespace detail

inline StandardizerStep fit_standardizer(const Matrix& x) {
  if (x.rows() < 2) {
    fail(ErrorKind::insufficient_data,
         "standardization needs at least 2 samples, got " + std::to_string(x.rows()));
  }
  if (x.cols() == 0) fail(ErrorKind::shape, "standardization of zero-dimensional data");
  for (double v : x.values()) {
    if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "training data has a non-finite value");
  }
  StandardizerStep step;
  if (!detail::fit_columns(x, step)) {
    fail(ErrorKind::numeric, "column statistics overflowed");
  }
  return step;
}

inline Sample apply_standardizer(std::span<const double> x, const StandardizerStep& step) {
  if (x.size() != step.dim()) {
    fail(ErrorKind::shape, "sample has " + std::to_string(x.size()) + " dimensions, standardizer has " +
                               std::to_string(step.dim()));
  }
  Sample out(x.begin(), x.end());
  detail::standardize_in_place(out, step);
  return out;
}

}  // namespace refold
