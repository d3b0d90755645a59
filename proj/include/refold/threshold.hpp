#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "refold/error.hpp"
#include "refold/metrics.hpp"
#include "refold/model.hpp"
#include "refold/random.hpp"
#include "refold/tasks.hpp"

namespace refold {

struct ThresholdGrid {
  std::vector<double> values;

  /// {0.3, 0.4, ..., 1.1}
  static ThresholdGrid standard() { return {{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1}}; }

  void validate() const {
    if (values.empty()) fail(ErrorKind::config, "threshold grid is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
        fail(ErrorKind::config, "threshold grid values must be positive and finite");
      }
      if (i > 0 && !(values[i] > values[i - 1])) {
        fail(ErrorKind::config, "threshold grid must be strictly increasing");
      }
    }
  }
};

struct ModelConfig {
  FoldOp fold = kDefaultFold;
  DistanceMetric metric = kDefaultMetric;
  std::size_t iterations = kDefaultIterations;
};

struct ThresholdSelection {
  double threshold = kDefaultThreshold;
  /// Mean validation Gmean per grid value.
  std::vector<double> mean_gmean;
};

inline constexpr double kGmeanTieTol = 1e-12;

/// Highest mean Gmean; ties go to the value closest to 1.0, then the larger.
/// Distances to 1.0 are compared with the same tolerance, so 0.9 and 1.1 tie.
inline double pick_threshold(const ThresholdGrid& grid, std::span<const double> mean_gmean) {
  grid.validate();
  if (mean_gmean.size() != grid.values.size()) {
    fail(ErrorKind::shape, "one mean Gmean per grid value expected");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.values.size(); ++i) {
    const double diff = mean_gmean[i] - mean_gmean[best];
    if (diff > kGmeanTieTol) {
      best = i;
    } else if (diff >= -kGmeanTieTol) {
      const double d_new = std::fabs(grid.values[i] - kDefaultThreshold);
      const double d_best = std::fabs(grid.values[best] - kDefaultThreshold);
      if (d_new < d_best - kGmeanTieTol ||
          (std::fabs(d_new - d_best) <= kGmeanTieTol && grid.values[i] > grid.values[best])) {
        best = i;
      }
    }
  }
  return grid.values[best];
}

/// k-fold cross-validated threshold choice on a training pool that holds both
/// targets and outliers. Folds are stratified: targets and outliers are dealt
/// into k folds separately (seeds derive_seed(seed, 0) and derive_seed(seed, 1))
/// and fold f pairs the f-th chunk of each. Models see fold-training targets
/// only; outliers are used for scoring alone.
inline ThresholdSelection select_threshold(const Matrix& samples, std::span<const Label> truth,
                                           const ModelConfig& config, const ThresholdGrid& grid, std::size_t k,
                                           std::uint64_t seed) {
  grid.validate();
  if (samples.rows() != truth.size()) fail(ErrorKind::shape, "one label per training sample expected");

  std::vector<std::size_t> targets, outliers;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    (truth[i] == Label::target ? targets : outliers).push_back(i);
  }
  if (outliers.empty()) {
    fail(ErrorKind::selection,
         "training pool has no outliers; threshold selection is impossible, use the default threshold 1");
  }
  if (outliers.size() < k || targets.size() < k) {
    fail(ErrorKind::selection, "training pool has " + std::to_string(targets.size()) + " targets and " +
                                   std::to_string(outliers.size()) + " outliers, too few for " +
                                   std::to_string(k) + "-fold selection");
  }

  const auto target_folds = kfold(targets, k, derive_seed(seed, 0));
  const auto outlier_folds = kfold(outliers, k, derive_seed(seed, 1));

  std::vector<double> sums(grid.values.size(), 0.0);
  std::vector<double> scores;
  std::vector<Label> fold_truth;
  for (std::size_t f = 0; f < k; ++f) {
    const auto model = train_ref(samples.select_rows(target_folds[f].train), config.iterations, config.fold);
    scores.clear();
    fold_truth.clear();
    for (std::size_t i : target_folds[f].validation) {
      scores.push_back(score(samples.row(i), model, config.metric));
      fold_truth.push_back(Label::target);
    }
    for (std::size_t i : outlier_folds[f].validation) {
      scores.push_back(score(samples.row(i), model, config.metric));
      fold_truth.push_back(Label::outlier);
    }
    for (std::size_t t = 0; t < grid.values.size(); ++t) {
      sums[t] += evaluate(scores, fold_truth, grid.values[t]).gmean;
    }
  }

  ThresholdSelection sel;
  sel.mean_gmean.reserve(sums.size());
  for (double s : sums) sel.mean_gmean.push_back(s / static_cast<double>(k));
  sel.threshold = pick_threshold(grid, sel.mean_gmean);
  return sel;
}

}  // namespace refold
