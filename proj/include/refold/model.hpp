#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "refold/distance.hpp"
#include "refold/error.hpp"
#include "refold/fold.hpp"
#include "refold/matrix.hpp"
#include "refold/standardizer.hpp"

namespace refold {

inline constexpr std::size_t kDefaultIterations = 101;
inline constexpr double kDefaultThreshold = 1.0;
inline constexpr FoldOp kDefaultFold = FoldOp::abs;
inline constexpr DistanceMetric kDefaultMetric = DistanceMetric::l1_over_d;

/// A trained REF classifier: J standardizations with the fold applied between
/// consecutive ones. A single step is the plain base classifier.
struct RefModel {
  std::vector<StandardizerStep> steps;
  FoldOp fold = kDefaultFold;

  std::size_t dim() const noexcept { return steps.empty() ? 0 : steps.front().dim(); }
  std::size_t iterations() const noexcept { return steps.size(); }

  /// The model that training would have produced with `depth` iterations.
  RefModel truncated(std::size_t depth) const {
    if (depth == 0 || depth > steps.size()) {
      fail(ErrorKind::config, "truncation depth " + std::to_string(depth) + " outside 1.." +
                                  std::to_string(steps.size()));
    }
    return RefModel{{steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(depth)}, fold};
  }

  void validate() const {
    if (steps.empty()) fail(ErrorKind::format, "model has no standardization steps");
    const std::size_t d = dim();
    if (d == 0) fail(ErrorKind::format, "model has zero dimensions");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& s = steps[i];
      if (s.mean.size() != d || s.stddev.size() != d) {
        fail(ErrorKind::format, "step " + std::to_string(i + 1) + " has inconsistent dimensionality");
      }
      for (std::size_t k = 0; k < d; ++k) {
        if (!std::isfinite(s.mean[k]) || !std::isfinite(s.stddev[k]) || !(s.stddev[k] > 0.0)) {
          fail(ErrorKind::format, "step " + std::to_string(i + 1) + " has an invalid mean or deviation");
        }
      }
    }
  }

  friend bool operator==(const RefModel&, const RefModel&) = default;
};

struct NoTrainingObserver {
  void operator()(std::size_t, const Matrix&) const noexcept {}
};

/// Fits a REF model on target-class samples. The observer is called after
/// every standardization with the 1-based iteration and the working copy.
template <class Observer = NoTrainingObserver>
RefModel train_ref(const Matrix& x, std::size_t iterations = kDefaultIterations, FoldOp fold = kDefaultFold,
                   Observer&& observe = {}) {
  if (iterations < 1) fail(ErrorKind::config, "iterations must be at least 1");
  if (x.rows() < 2) {
    fail(ErrorKind::insufficient_data, "training needs at least 2 samples, got " + std::to_string(x.rows()));
  }
  if (x.cols() == 0) fail(ErrorKind::shape, "training data has zero dimensions");
  for (double v : x.values()) {
    if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "training data has a non-finite value");
  }

  RefModel model;
  model.fold = fold;
  model.steps.reserve(iterations);
  Matrix work = x;
  for (std::size_t i = 0; i < iterations; ++i) {
    if (i > 0) fold_in_place(fold, work.values());
    StandardizerStep step;
    if (!detail::fit_columns(work, step)) {
      fail(ErrorKind::numeric, "non-finite column statistics at iteration " + std::to_string(i + 1));
    }
    for (std::size_t n = 0; n < work.rows(); ++n) detail::standardize_in_place(work.row(n), step);
    observe(i + 1, std::as_const(work));
    model.steps.push_back(std::move(step));
  }
  return model;
}

/// Single standardization, no folding.
inline RefModel train_base(const Matrix& x) { return train_ref(x, 1, FoldOp::abs); }

namespace detail {

inline void check_sample(std::span<const double> y, const RefModel& model) {
  if (y.size() != model.dim()) {
    fail(ErrorKind::shape, "sample has " + std::to_string(y.size()) + " dimensions, model expects " +
                               std::to_string(model.dim()));
  }
  for (double v : y) {
    if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "sample has a non-finite value");
  }
}

// Same operation order as the training loop, so training rows replay exactly.
inline void transform_in_place(std::span<double> y, const RefModel& model, std::size_t depth) noexcept {
  for (std::size_t i = 0; i < depth; ++i) {
    if (i > 0) fold_in_place(model.fold, y);
    standardize_in_place(y, model.steps[i]);
  }
}

}  // namespace detail

inline Sample transform_ref(std::span<const double> y, const RefModel& model) {
  detail::check_sample(y, model);
  Sample out(y.begin(), y.end());
  detail::transform_in_place(out, model, model.iterations());
  return out;
}

inline double score(std::span<const double> y, const RefModel& model,
                    DistanceMetric metric = kDefaultMetric) {
  return distance_to_origin(metric, transform_ref(y, model));
}

/// Scores after each of the J steps; element i equals the score under
/// model.truncated(i + 1).
inline std::vector<double> depth_scores(std::span<const double> y, const RefModel& model,
                                        DistanceMetric metric = kDefaultMetric) {
  detail::check_sample(y, model);
  Sample work(y.begin(), y.end());
  std::vector<double> out;
  out.reserve(model.iterations());
  for (std::size_t i = 0; i < model.iterations(); ++i) {
    if (i > 0) fold_in_place(model.fold, work);
    detail::standardize_in_place(work, model.steps[i]);
    out.push_back(distance_to_origin(metric, work));
  }
  return out;
}

inline std::vector<double> score_rows(const Matrix& x, const RefModel& model,
                                      DistanceMetric metric = kDefaultMetric) {
  std::vector<double> out;
  out.reserve(x.rows());
  for (std::size_t n = 0; n < x.rows(); ++n) out.push_back(score(x.row(n), model, metric));
  return out;
}

enum class Label { target, outlier };

inline constexpr std::string_view to_string(Label l) noexcept {
  return l == Label::target ? "target" : "outlier";
}

struct Prediction {
  double score = 0.0;
  Label label = Label::target;
  double threshold = kDefaultThreshold;
};

inline void check_threshold(double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    fail(ErrorKind::config, "threshold must be a positive finite number");
  }
}

/// Target iff score <= threshold.
inline Label label_for(double score_value, double threshold) noexcept {
  return score_value <= threshold ? Label::target : Label::outlier;
}

inline Prediction classify(std::span<const double> y, const RefModel& model,
                           DistanceMetric metric = kDefaultMetric, double threshold = kDefaultThreshold) {
  check_threshold(threshold);
  const double s = score(y, model, metric);
  return {s, label_for(s, threshold), threshold};
}

}  // namespace refold
