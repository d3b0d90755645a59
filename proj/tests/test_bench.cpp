#include <cmath>

#include <gtest/gtest.h>

#include "refold/bench.hpp"

using namespace refold;

namespace {

// Two well separated clusters in 3 dimensions.
NamedDataset separable(std::uint64_t seed) {
  SplitMix64 rng(seed);
  Dataset ds;
  for (int i = 0; i < 80; ++i) {
    const bool a = i % 2 == 0;
    Sample s(3);
    for (double& v : s) v = rng.normal() + (a ? 0.0 : 60.0);
    ds.features.append_row(s);
    ds.labels.push_back(a ? "a" : "b");
  }
  ds.class_names = {"a", "b"};
  return {"sep", "Sep", std::move(ds), "synthetic"};
}

// Overlapping clusters so that curves and thresholds matter.
NamedDataset overlapping(std::uint64_t seed) {
  SplitMix64 rng(seed);
  Dataset ds;
  for (int i = 0; i < 90; ++i) {
    const int c = i % 3;
    Sample s(4);
    for (double& v : s) v = rng.normal() * (1.0 + c) + c * 1.5;
    ds.features.append_row(s);
    ds.labels.push_back(std::string(1, static_cast<char>('p' + c)));
  }
  ds.class_names = {"p", "q", "r"};
  return {"ovl", "Ovl", std::move(ds), "synthetic"};
}

BenchSpec small_spec() {
  BenchSpec s;
  s.datasets = {"ovl"};
  s.iterations = 12;
  s.repetitions = 3;
  s.include_base = true;
  return s;
}

}  // namespace

TEST(Bench, SeparableTaskRejectsEveryOutlier) {
  auto spec = small_spec();
  spec.iterations = 101;
  const auto report = run_benchmark(spec, prepare_bench(spec, {separable(1)}));
  ASSERT_EQ(report.tasks.size(), 2u);
  for (const auto& run : report.runs) {
    EXPECT_DOUBLE_EQ(run.ref.tnr, 1.0) << run.task;
    EXPECT_GT(run.ref.gmean, 0.8) << run.task;
  }
  EXPECT_EQ(report.tasks[0].train_targets, 28u);
  EXPECT_EQ(report.tasks[0].test_targets, 12u);
  EXPECT_EQ(report.tasks[0].test_outliers, 12u);
}

TEST(Bench, DeterministicSectionRepeatsAcrossRunsAndJobs) {
  const auto spec = small_spec();
  const auto in = prepare_bench(spec, {overlapping(2)});
  const auto a = run_benchmark(spec, in, 1);
  const auto b = run_benchmark(spec, in, 3);
  EXPECT_EQ(a.deterministic_text(), b.deterministic_text());
  EXPECT_NE(a.deterministic_text().find("Aver.,"), std::string::npos);
  EXPECT_EQ(a.runs.size(), 9u);
}

TEST(Bench, SeedChangesSplits) {
  auto spec = small_spec();
  const auto a = run_benchmark(spec, prepare_bench(spec, {overlapping(2)}));
  spec.seed = 7;
  const auto b = run_benchmark(spec, prepare_bench(spec, {overlapping(2)}));
  EXPECT_NE(a.runs[0].split_seed, b.runs[0].split_seed);
}

TEST(Bench, AveragesAreMeansOfTaskValues) {
  const auto spec = small_spec();
  const auto r = run_benchmark(spec, prepare_bench(spec, {overlapping(3)}));
  double m = 0.0;
  for (const auto& t : r.tasks) m += t.ref_mean;
  EXPECT_NEAR(r.ref_average().mean, m / 3.0, 1e-15);
  ASSERT_TRUE(r.base_average().has_value());
}

TEST(Bench, MeanStdUsesSampleDeviation) {
  const std::vector<double> v{1.0, 2.0, 3.0};
  const auto ms = mean_std(v);
  EXPECT_DOUBLE_EQ(ms.mean, 2.0);
  EXPECT_DOUBLE_EQ(ms.std, 1.0);
}

TEST(Bench, GridModeRunsAndRecordsThresholds) {
  auto spec = small_spec();
  spec.mode = ThresholdMode::grid;
  const auto r = run_benchmark(spec, prepare_bench(spec, {overlapping(4)}));
  for (const auto& run : r.runs) {
    EXPECT_NE(std::find(spec.grid.values.begin(), spec.grid.values.end(), run.ref_threshold), spec.grid.values.end());
  }
}

TEST(LearningCurves, FirstPointIsBaseAndLastIsFullModel) {
  const auto spec = small_spec();
  const auto in = prepare_bench(spec, {overlapping(5)});
  const auto report = run_benchmark(spec, in);
  for (const auto& run : report.runs) {
    const auto curve = learning_curve(spec, in, run.task, run.repetition);
    ASSERT_EQ(curve.gmean.size(), spec.iterations);
    EXPECT_EQ(curve.gmean.front(), run.base->gmean) << run.task;
    EXPECT_EQ(curve.gmean.back(), run.ref.gmean) << run.task;
  }
}

TEST(LearningCurves, TruncationMatchesShorterTraining) {
  auto spec = small_spec();
  const auto in = prepare_bench(spec, {overlapping(6)});
  const auto full = learning_curve(spec, in, "Ovl2", 1);
  spec.iterations = 5;
  const auto shortc = learning_curve(spec, in, "Ovl2", 1);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(full.gmean[i], shortc.gmean[i]);
}

TEST(LearningCurves, RejectGridModeAndBadRepetition) {
  auto spec = small_spec();
  const auto in = prepare_bench(spec, {overlapping(7)});
  EXPECT_THROW(learning_curve(spec, in, "Ovl1", 3), Error);
  EXPECT_THROW(learning_curve(spec, in, "Nope", 0), Error);
  spec.mode = ThresholdMode::grid;
  try {
    learning_curve(spec, in, "Ovl1", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config);
  }
}

TEST(BenchSpecParse, KeysAndDefaults) {
  const auto s = parse_bench_spec(
      "[bench]\ndatasets = iris, sonar\ndata_dir = d\nthreshold = grid\ngrid = 0.5,1.0\nseed = 9\ninclude_base = yes\n",
      "/base");
  EXPECT_EQ(s.datasets, (std::vector<std::string>{"iris", "sonar"}));
  EXPECT_EQ(s.data_dir, std::filesystem::path("/base/d"));
  EXPECT_EQ(s.mode, ThresholdMode::grid);
  EXPECT_EQ(s.grid.values, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(s.seed, 9u);
  EXPECT_TRUE(s.include_base);
  EXPECT_EQ(s.iterations, 101u);
  EXPECT_THROW(parse_bench_spec("[bench]\nfold=abs\n"), Error);
  EXPECT_THROW(parse_bench_spec("[bench]\ndatasets=x\nbogus=1\n"), Error);
  EXPECT_THROW(parse_bench_spec("[bench]\ndatasets=x\nthreshold=-1\n"), Error);
}

TEST(BenchSpecParse, HashIgnoresDataDir) {
  auto a = parse_bench_spec("[bench]\ndatasets=x\n", "/one");
  auto b = parse_bench_spec("[bench]\ndatasets=x\n", "/two");
  EXPECT_EQ(a.hash(), b.hash());
  b.iterations = 5;
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Probe, ReportsOneRowPerSize) {
  const std::vector<std::size_t> ns{200, 400};
  const auto rows = timing_probe(ns, 3, 5, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].n, 400u);
  EXPECT_GT(rows[0].median_seconds, 0.0);
  EXPECT_NE(probe_text(rows).find("ratio_to_previous"), std::string::npos);
}
