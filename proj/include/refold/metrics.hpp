#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "refold/error.hpp"
#include "refold/model.hpp"

namespace refold {

/// Confusion counts with the target class as positive.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct EvalResult {
  ConfusionCounts counts;
  double tpr = 0.0;
  double tnr = 0.0;
  double gmean = 0.0;
};

/// Gmean = sqrt(TPR * TNR).
inline EvalResult gmean(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) fail(ErrorKind::evaluation, "no target samples to evaluate");
  if (c.tn + c.fp == 0) fail(ErrorKind::evaluation, "no outlier samples to evaluate");
  EvalResult r;
  r.counts = c;
  r.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  r.tnr = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  r.gmean = std::sqrt(r.tpr * r.tnr);
  return r;
}

inline ConfusionCounts count_outcomes(std::span<const double> scores, std::span<const Label> truth,
                                      double threshold) {
  if (scores.size() != truth.size()) {
    fail(ErrorKind::shape, std::to_string(scores.size()) + " scores for " + std::to_string(truth.size()) +
                               " labels");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool accepted = label_for(scores[i], threshold) == Label::target;
    if (truth[i] == Label::target) {
      accepted ? ++c.tp : ++c.fn;
    } else {
      accepted ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

inline EvalResult evaluate(std::span<const double> scores, std::span<const Label> truth, double threshold) {
  return gmean(count_outcomes(scores, truth, threshold));
}

}  // namespace refold
