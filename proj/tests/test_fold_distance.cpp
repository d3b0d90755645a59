#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "refold/distance.hpp"
#include "refold/fold.hpp"
#include "refold/random.hpp"

using namespace refold;

TEST(Fold, AbsExample) {
  EXPECT_EQ(fold_apply(FoldOp::abs, Sample{-2.0, 0.5}), (Sample{2.0, 0.5}));
}

TEST(Fold, CosAbsUsesCosInsideUnitIntervalAndAbsOutside) {
  EXPECT_EQ(fold_apply(FoldOp::cos_abs, Sample{0.0, 2.0}), (Sample{1.0, 2.0}));
  // Closed interval: +-1 take the cos branch.
  EXPECT_DOUBLE_EQ(fold_value(FoldOp::cos_abs, 1.0), std::cos(1.0));
  EXPECT_DOUBLE_EQ(fold_value(FoldOp::cos_abs, -1.0), std::cos(1.0));
  EXPECT_DOUBLE_EQ(fold_value(FoldOp::cos_abs, -1.5), 1.5);
}

TEST(Fold, SqrExample) { EXPECT_EQ(fold_apply(FoldOp::sqr, Sample{-3.0}), (Sample{9.0})); }

TEST(Fold, StandardFunctions) {
  EXPECT_DOUBLE_EQ(fold_value(FoldOp::cos, 0.3), std::cos(0.3));
  EXPECT_DOUBLE_EQ(fold_value(FoldOp::sin, 0.3), std::sin(0.3));
  EXPECT_DOUBLE_EQ(fold_value(FoldOp::tanh, 0.3), std::tanh(0.3));
}

TEST(Fold, RejectsNonFiniteInput) {
  for (FoldOp op : kAllFoldOps) {
    try {
      fold_apply(op, Sample{1.0, std::numeric_limits<double>::quiet_NaN()});
      FAIL() << "expected an error for " << to_string(op);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    }
    EXPECT_THROW(fold_apply(op, Sample{std::numeric_limits<double>::infinity()}), Error);
  }
}

TEST(Fold, TotalOnFiniteReals) {
  SplitMix64 rng(11);
  for (FoldOp op : kAllFoldOps) {
    for (int i = 0; i < 2000; ++i) {
      const double x = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform() * 300.0 - 150.0);
      const auto y = fold_apply(op, Sample{x, -x});
      ASSERT_EQ(y.size(), 2u);
      // sqr may overflow for |x| > 1e154; every other op stays finite.
      if (op != FoldOp::sqr || std::fabs(x) < 1e150) {
        EXPECT_TRUE(std::isfinite(y[0]) && std::isfinite(y[1])) << to_string(op) << " at " << x;
      }
    }
  }
}

TEST(Fold, NamesRoundTrip) {
  for (FoldOp op : kAllFoldOps) EXPECT_EQ(parse_fold_op(to_string(op)), op);
  EXPECT_EQ(parse_fold_op("cos-abs"), FoldOp::cos_abs);
  EXPECT_THROW(parse_fold_op("relu"), Error);
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance_to_origin(DistanceMetric::l1_over_d, Sample{1.0, -1.0}), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_origin(DistanceMetric::l1_over_d, Sample{0.0, 0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(distance_to_origin(DistanceMetric::l2_over_d, Sample{0.0, 0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(distance_to_origin(DistanceMetric::l2_over_d, Sample{3.0, 4.0}), 2.5);
}

TEST(Distance, NonNegativeAndZeroOnlyAtOrigin) {
  SplitMix64 rng(5);
  for (int i = 0; i < 500; ++i) {
    Sample v(1 + rng.below(8));
    for (double& x : v) x = rng.normal();
    for (auto m : {DistanceMetric::l1_over_d, DistanceMetric::l2_over_d}) {
      EXPECT_GT(distance_to_origin(m, v), 0.0);
    }
  }
  EXPECT_THROW(distance_to_origin(DistanceMetric::l1_over_d, Sample{}), Error);
}

TEST(Distance, Names) {
  EXPECT_EQ(parse_distance_metric("l1"), DistanceMetric::l1_over_d);
  EXPECT_EQ(parse_distance_metric("L2/D"), DistanceMetric::l2_over_d);
  EXPECT_THROW(parse_distance_metric("linf"), Error);
}
