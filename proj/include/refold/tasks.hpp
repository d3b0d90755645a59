#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "refold/dataset.hpp"
#include "refold/error.hpp"
#include "refold/model.hpp"
#include "refold/random.hpp"

namespace refold {

/// One class of a dataset as the target, every other sample as outlier.
struct OccTask {
  std::string dataset;
  std::string target_class;
  std::string name;
};

/// One task per class, in class order, named prefix1, prefix2, ...
inline std::vector<OccTask> make_occ_tasks(const Dataset& ds, const std::string& dataset_name,
                                           const std::string& prefix) {
  if (ds.class_names.size() < 2) {
    fail(ErrorKind::config, dataset_name + " has " + std::to_string(ds.class_names.size()) +
                                " class(es); one-class tasks need at least 2 to contrast");
  }
  std::vector<OccTask> tasks;
  for (std::size_t i = 0; i < ds.class_names.size(); ++i) {
    tasks.push_back({dataset_name, ds.class_names[i], prefix + std::to_string(i + 1)});
  }
  return tasks;
}

inline std::vector<Label> task_truth(const Dataset& ds, const OccTask& task) {
  ds.class_id(task.target_class);
  std::vector<Label> truth;
  truth.reserve(ds.labels.size());
  for (const auto& l : ds.labels) truth.push_back(l == task.target_class ? Label::target : Label::outlier);
  return truth;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified repeated holdout. Repetition r shuffles with
/// SplitMix64(derive_seed(seed, r)): targets first, then outliers.
struct SplitPlan {
  std::uint64_t seed = 0;
  double train_fraction = 0.7;
  std::vector<SplitIndices> repetitions;
};

/// floor(fraction * n); the epsilon keeps exact products such as 0.7 * 50
/// from landing one below after rounding.
inline std::size_t train_count(double fraction, std::size_t n) noexcept {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

inline SplitPlan make_split_plan(std::span<const Label> truth, double train_fraction, std::size_t repetitions,
                                 std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail(ErrorKind::config, "train fraction must lie strictly between 0 and 1");
  }
  if (repetitions < 1) fail(ErrorKind::config, "repetitions must be at least 1");

  std::vector<std::size_t> targets, outliers;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    (truth[i] == Label::target ? targets : outliers).push_back(i);
  }
  const std::size_t n_target_train = train_count(train_fraction, targets.size());
  const std::size_t n_outlier_train = train_count(train_fraction, outliers.size());
  if (n_target_train < 2) {
    fail(ErrorKind::config, "split leaves " + std::to_string(n_target_train) + " target training samples");
  }
  if (n_target_train == targets.size() || outliers.empty() || n_outlier_train == outliers.size()) {
    fail(ErrorKind::config, "split leaves an empty target or outlier test pool");
  }

  SplitPlan plan{seed, train_fraction, {}};
  for (std::size_t r = 0; r < repetitions; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    auto t = targets;
    auto o = outliers;
    shuffle(std::span(t), rng);
    shuffle(std::span(o), rng);
    SplitIndices s;
    s.train.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n_target_train));
    s.train.insert(s.train.end(), o.begin(), o.begin() + static_cast<std::ptrdiff_t>(n_outlier_train));
    s.test.assign(t.begin() + static_cast<std::ptrdiff_t>(n_target_train), t.end());
    s.test.insert(s.test.end(), o.begin() + static_cast<std::ptrdiff_t>(n_outlier_train), o.end());
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.test.begin(), s.test.end());
    plan.repetitions.push_back(std::move(s));
  }
  return plan;
}

inline SplitPlan make_split_plan(const Dataset& ds, const OccTask& task, double train_fraction,
                                 std::size_t repetitions, std::uint64_t seed) {
  return make_split_plan(task_truth(ds, task), train_fraction, repetitions, seed);
}

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

/// Shuffles with SplitMix64(seed) and deals contiguous chunks; the first
/// n % k folds get one extra item.
inline std::vector<Fold> kfold(std::span<const std::size_t> indices, std::size_t k, std::uint64_t seed) {
  if (k < 2) fail(ErrorKind::config, "k-fold needs k >= 2");
  if (indices.size() < k) {
    fail(ErrorKind::config, "cannot make " + std::to_string(k) + " folds from " +
                                std::to_string(indices.size()) + " items");
  }
  std::vector<std::size_t> order(indices.begin(), indices.end());
  SplitMix64 rng(seed);
  shuffle(std::span(order), rng);

  const std::size_t base = order.size() / k;
  const std::size_t extra = order.size() % k;
  std::vector<Fold> folds(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = base + (f < extra ? 1 : 0);
    auto& fold = folds[f];
    fold.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                           order.begin() + static_cast<std::ptrdiff_t>(start + len));
    fold.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(start));
    fold.train.insert(fold.train.end(), order.begin() + static_cast<std::ptrdiff_t>(start + len), order.end());
    std::sort(fold.validation.begin(), fold.validation.end());
    std::sort(fold.train.begin(), fold.train.end());
    start += len;
  }
  return folds;
}

}  // namespace refold
