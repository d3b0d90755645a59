#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "oracle/ref_oracle.hpp"
#include "refold/random.hpp"
#include "refold/threshold.hpp"

using namespace refold;

namespace {

// Targets near the origin, outliers at a shifted centre.
struct Pool {
  Matrix x;
  std::vector<Label> truth;
};

Pool make_pool(std::uint64_t seed, std::size_t nt, std::size_t no, double shift) {
  SplitMix64 rng(seed);
  Pool p;
  for (std::size_t i = 0; i < nt + no; ++i) {
    const bool target = i < nt;
    Sample s(3);
    for (double& v : s) v = rng.normal() + (target ? 0.0 : shift);
    p.x.append_row(s);
    p.truth.push_back(target ? Label::target : Label::outlier);
  }
  return p;
}

}  // namespace

TEST(PickThreshold, SingletonGrid) {
  const ThresholdGrid g{{0.8}};
  EXPECT_DOUBLE_EQ(pick_threshold(g, std::vector<double>{0.3}), 0.8);
}

TEST(PickThreshold, AllTiedPrefersOne) {
  const auto g = ThresholdGrid::standard();
  EXPECT_DOUBLE_EQ(pick_threshold(g, std::vector<double>(9, 0.0)), 1.0);
}

TEST(PickThreshold, TieBreaksTowardOneThenLarger) {
  const ThresholdGrid g{{0.5, 0.9, 1.1, 1.3}};
  EXPECT_DOUBLE_EQ(pick_threshold(g, std::vector<double>{0.7, 0.8, 0.8, 0.1}), 1.1);
  // 0.9 and 1.1 are equally close to 1 up to rounding; the larger wins.
  const ThresholdGrid h{{0.9, 1.1}};
  EXPECT_DOUBLE_EQ(pick_threshold(h, std::vector<double>{0.5, 0.5}), 1.1);
  EXPECT_DOUBLE_EQ(pick_threshold(g, std::vector<double>{0.9, 0.8, 0.8, 0.1}), 0.5);
}

TEST(ThresholdGrid, Validation) {
  EXPECT_THROW((ThresholdGrid{{}}).validate(), Error);
  EXPECT_THROW((ThresholdGrid{{0.5, 0.5}}).validate(), Error);
  EXPECT_THROW((ThresholdGrid{{-0.1, 0.5}}).validate(), Error);
  EXPECT_NO_THROW(ThresholdGrid::standard().validate());
}

TEST(SelectThreshold, MatchesBruteForceRescoring) {
  const auto pool = make_pool(21, 40, 30, 3.0);
  const ModelConfig cfg{FoldOp::abs, DistanceMetric::l1_over_d, 15};
  const auto grid = ThresholdGrid::standard();
  const std::uint64_t seed = 4242;
  const auto sel = select_threshold(pool.x, pool.truth, cfg, grid, 5, seed);

  std::vector<std::size_t> targets, outliers;
  for (std::size_t i = 0; i < pool.truth.size(); ++i) (pool.truth[i] == Label::target ? targets : outliers).push_back(i);
  const auto tf = kfold(targets, 5, derive_seed(seed, 0));
  const auto of = kfold(outliers, 5, derive_seed(seed, 1));
  std::vector<double> expect(grid.values.size(), 0.0);
  for (std::size_t f = 0; f < 5; ++f) {
    oracle::Rows rows;
    for (std::size_t i : tf[f].train) rows.emplace_back(pool.x.row(i).begin(), pool.x.row(i).end());
    const auto om = oracle::train(rows, 15, "abs");
    const auto sc = [&](std::size_t i) {
      return oracle::l1_over_d(oracle::transform(oracle::Vec(pool.x.row(i).begin(), pool.x.row(i).end()), om, "abs"));
    };
    for (std::size_t t = 0; t < grid.values.size(); ++t) {
      double tp = 0, tn = 0;
      for (std::size_t i : tf[f].validation) tp += sc(i) <= grid.values[t];
      for (std::size_t i : of[f].validation) tn += sc(i) > grid.values[t];
      expect[t] += std::sqrt(tp / tf[f].validation.size() * (tn / of[f].validation.size())) / 5.0;
    }
  }
  ASSERT_EQ(sel.mean_gmean.size(), expect.size());
  for (std::size_t t = 0; t < expect.size(); ++t) EXPECT_NEAR(sel.mean_gmean[t], expect[t], 1e-12);
  EXPECT_DOUBLE_EQ(sel.threshold, pick_threshold(grid, expect));
}

// Far outliers are rejected at every T, so only TPR moves and the largest T
// is optimal (possibly tied with smaller ones).
TEST(SelectThreshold, SeparableTaskPicksAnOptimalThreshold) {
  const auto pool = make_pool(5, 40, 30, 40.0);
  const auto sel = select_threshold(pool.x, pool.truth, ModelConfig{}, ThresholdGrid::standard(), 5, 1);
  for (std::size_t t = 1; t < sel.mean_gmean.size(); ++t) EXPECT_GE(sel.mean_gmean[t], sel.mean_gmean[t - 1]);
  const auto& g = ThresholdGrid::standard().values;
  const auto at = static_cast<std::size_t>(std::find(g.begin(), g.end(), sel.threshold) - g.begin());
  ASSERT_LT(at, g.size());
  EXPECT_DOUBLE_EQ(sel.mean_gmean[at], sel.mean_gmean.back());
}

TEST(SelectThreshold, NeedsOutliers) {
  auto pool = make_pool(6, 20, 0, 0.0);
  try {
    select_threshold(pool.x, pool.truth, ModelConfig{}, ThresholdGrid::standard(), 5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::selection);
  }
  pool = make_pool(6, 20, 3, 2.0);
  EXPECT_THROW(select_threshold(pool.x, pool.truth, ModelConfig{}, ThresholdGrid::standard(), 5, 1), Error);
}
