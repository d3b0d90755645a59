#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "refold/dataset.hpp"
#include "refold/error.hpp"
#include "refold/metrics.hpp"
#include "refold/model.hpp"
#include "refold/random.hpp"
#include "refold/registry.hpp"
#include "refold/tasks.hpp"
#include "refold/text.hpp"
#include "refold/threshold.hpp"

namespace refold {

inline constexpr std::string_view kReportFormat = "refold-bench-report v1";
inline constexpr std::string_view kCurveFormat = "refold-learning-curve v1";
inline constexpr std::string_view kProbeFormat = "refold-timing-probe v1";

enum class ThresholdMode { fixed, grid };

/// Declarative description of one benchmark run.
struct BenchSpec {
  std::vector<std::string> datasets;
  std::filesystem::path data_dir = "data";
  std::filesystem::path manifest = "manifest.ini";  // relative to data_dir
  FoldOp fold = kDefaultFold;
  DistanceMetric metric = kDefaultMetric;
  std::size_t iterations = kDefaultIterations;
  ThresholdMode mode = ThresholdMode::fixed;
  double threshold = kDefaultThreshold;
  ThresholdGrid grid = ThresholdGrid::standard();
  std::size_t cv_folds = 5;
  double train_fraction = 0.7;
  std::size_t repetitions = 5;
  std::uint64_t seed = 2024;
  bool include_base = false;

  ModelConfig model_config() const { return {fold, metric, iterations}; }

  void validate() const {
    if (iterations < 1) fail(ErrorKind::config, "iterations must be at least 1");
    if (repetitions < 1) fail(ErrorKind::config, "repetitions must be at least 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
      fail(ErrorKind::config, "train_fraction must lie strictly between 0 and 1");
    }
    if (mode == ThresholdMode::fixed) {
      check_threshold(threshold);
    } else {
      grid.validate();
      if (cv_folds < 2) fail(ErrorKind::config, "cv_folds must be at least 2");
    }
  }

  std::string threshold_text() const {
    if (mode == ThresholdMode::fixed) return "fixed:" + text::format_short(threshold);
    return "grid:" + text::join(grid.values, "/", text::format_short) + ":k=" + std::to_string(cv_folds);
  }

  /// Normalized key set; data_dir is excluded so reports compare across machines.
  std::string canonical() const {
    std::string s;
    s += "datasets=" + text::join(datasets, ",", [](const std::string& d) { return d; }) + "\n";
    s += "manifest=" + manifest.generic_string() + "\n";
    s += "fold=" + std::string(to_string(fold)) + "\n";
    s += "distance=" + std::string(to_string(metric)) + "\n";
    s += "iterations=" + std::to_string(iterations) + "\n";
    s += "threshold=" + threshold_text() + "\n";
    s += "train_fraction=" + text::format_short(train_fraction) + "\n";
    s += "repetitions=" + std::to_string(repetitions) + "\n";
    s += "seed=" + std::to_string(seed) + "\n";
    s += "include_base=" + std::string(include_base ? "true" : "false") + "\n";
    return s;
  }

  std::uint64_t hash() const { return fnv1a64(canonical()); }
};

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

/// Parses a [bench] INI section. A relative data_dir is resolved against base_dir.
inline BenchSpec parse_bench_spec(std::string_view content, const std::filesystem::path& base_dir = ".") {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(content)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::parse, std::string("bench spec: ") + e.what());
  }
  const auto section = tree.get_child_optional("bench");
  if (!section) fail(ErrorKind::config, "bench spec: missing [bench] section");
  for (const auto& [key, node] : tree) {
    if (key != "bench") fail(ErrorKind::config, "bench spec: unexpected section or key '" + key + "'");
  }

  BenchSpec spec;
  spec.data_dir = base_dir / "data";
  bool have_datasets = false;
  for (const auto& [key, node] : *section) {
    const auto value = node.get_value<std::string>();
    const auto where = "bench spec: " + key;
    const auto count = [&] { return detail::parse_count(value, where); };
    if (key == "datasets") {
      for (auto d : text::split(value, ',')) {
        if (!text::trim(d).empty()) spec.datasets.emplace_back(text::trim(d));
      }
      have_datasets = true;
    } else if (key == "data_dir") {
      const std::filesystem::path p = value;
      spec.data_dir = p.is_absolute() ? p : base_dir / p;
    } else if (key == "manifest") {
      spec.manifest = value;
    } else if (key == "fold") {
      spec.fold = parse_fold_op(value);
    } else if (key == "distance") {
      spec.metric = parse_distance_metric(value);
    } else if (key == "iterations") {
      spec.iterations = count();
    } else if (key == "threshold") {
      if (value == "grid") {
        spec.mode = ThresholdMode::grid;
      } else {
        const auto t = text::parse_double(value);
        if (!t) fail(ErrorKind::config, where + ": expected a number or 'grid'");
        spec.mode = ThresholdMode::fixed;
        spec.threshold = *t;
      }
    } else if (key == "grid") {
      spec.grid.values.clear();
      for (auto v : text::split(value, ',')) {
        const auto t = text::parse_double(v);
        if (!t) fail(ErrorKind::config, where + ": bad value '" + std::string(v) + "'");
        spec.grid.values.push_back(*t);
      }
    } else if (key == "cv_folds") {
      spec.cv_folds = count();
    } else if (key == "train_fraction") {
      const auto f = text::parse_double(value);
      if (!f) fail(ErrorKind::config, where + ": expected a number");
      spec.train_fraction = *f;
    } else if (key == "repetitions") {
      spec.repetitions = count();
    } else if (key == "seed") {
      const auto s = text::parse_uint(value);
      if (!s) fail(ErrorKind::config, where + ": expected an unsigned integer");
      spec.seed = *s;
    } else if (key == "include_base") {
      spec.include_base = detail::parse_bool(value, where);
    } else {
      fail(ErrorKind::config, where + ": unknown key");
    }
  }
  if (!have_datasets || spec.datasets.empty()) fail(ErrorKind::config, "bench spec: 'datasets' is required");
  spec.validate();
  return spec;
}

inline BenchSpec load_bench_spec(const std::filesystem::path& path) {
  return parse_bench_spec(read_text_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

/// A dataset as the benchmark sees it, with naming and report notes.
struct NamedDataset {
  std::string name;
  std::string task_prefix;
  Dataset data;
  std::string description;
};

struct TaskPlan {
  OccTask task;
  std::size_t dataset = 0;
  std::vector<Label> truth;
  std::uint64_t seed = 0;
  SplitPlan splits;
};

/// Datasets, tasks and splits, fixed before any model is trained.
struct BenchInputs {
  std::vector<NamedDataset> datasets;
  std::vector<TaskPlan> tasks;
};

/// Split seed of a task: mix64(master + fnv1a64(task name)).
inline std::uint64_t task_seed(std::uint64_t master, std::string_view task_name) noexcept {
  return derive_seed(master, fnv1a64(task_name));
}

/// CV seed of one repetition: mix64(repetition seed + 1).
inline std::uint64_t cv_seed(std::uint64_t task_seed_value, std::size_t repetition) noexcept {
  return derive_seed(derive_seed(task_seed_value, repetition), 1);
}

inline BenchInputs prepare_bench(const BenchSpec& spec, std::vector<NamedDataset> datasets) {
  spec.validate();
  BenchInputs in;
  in.datasets = std::move(datasets);
  for (std::size_t d = 0; d < in.datasets.size(); ++d) {
    const auto& nd = in.datasets[d];
    for (auto& task : make_occ_tasks(nd.data, nd.name, nd.task_prefix)) {
      TaskPlan plan;
      plan.task = std::move(task);
      plan.dataset = d;
      plan.truth = task_truth(nd.data, plan.task);
      plan.seed = task_seed(spec.seed, plan.task.name);
      try {
        plan.splits = make_split_plan(plan.truth, spec.train_fraction, spec.repetitions, plan.seed);
      } catch (const Error& e) {
        fail(ErrorKind::evaluation, "task " + plan.task.name + ": " + e.what());
      }
      in.tasks.push_back(std::move(plan));
    }
  }
  return in;
}

inline std::filesystem::path manifest_path(const BenchSpec& spec) {
  return spec.manifest.is_absolute() ? spec.manifest : spec.data_dir / spec.manifest;
}

/// Loads every spec dataset through the manifest and checks its counts.
inline BenchInputs prepare_bench(const BenchSpec& spec) {
  const auto reg = load_registry(manifest_path(spec), spec.data_dir);
  std::vector<NamedDataset> datasets;
  for (const auto& name : spec.datasets) {
    const auto& entry = reg.find(name);
    std::string desc = "file=" + entry.file.generic_string() + " classes=" + std::to_string(entry.classes) +
                       " samples=" + std::to_string(entry.samples) + " dim=" + std::to_string(entry.dim) +
                       " features=" + entry.features_text;
    if (!entry.note.empty()) desc += " note=" + entry.note;
    datasets.push_back({entry.name, entry.task_prefix, load_registered(reg, entry), std::move(desc)});
  }
  return prepare_bench(spec, std::move(datasets));
}

struct RunResult {
  std::string task;
  std::size_t repetition = 0;
  std::uint64_t split_seed = 0;
  double ref_threshold = kDefaultThreshold;
  EvalResult ref;
  double base_threshold = kDefaultThreshold;
  std::optional<EvalResult> base;
  double seconds = 0.0;
};

struct TaskSummary {
  OccTask task;
  std::size_t train_targets = 0;
  std::size_t test_targets = 0;
  std::size_t test_outliers = 0;
  double ref_mean = 0.0;
  double ref_std = 0.0;
  std::optional<double> base_mean;
  std::optional<double> base_std;
};

/// Mean and sample standard deviation (N-1; 0 for a single value).
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

inline MeanStd mean_std(std::span<const double> v) {
  MeanStd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

struct BenchReport {
  std::string spec_canonical;
  std::uint64_t spec_hash = 0;
  std::uint64_t seed = 0;
  bool include_base = false;
  std::vector<std::string> header_lines;
  std::vector<TaskSummary> tasks;
  std::vector<RunResult> runs;

  /// Unweighted mean over tasks of the task means and of the task deviations.
  MeanStd ref_average() const {
    MeanStd a;
    for (const auto& t : tasks) {
      a.mean += t.ref_mean;
      a.std += t.ref_std;
    }
    if (!tasks.empty()) {
      a.mean /= static_cast<double>(tasks.size());
      a.std /= static_cast<double>(tasks.size());
    }
    return a;
  }

  std::optional<MeanStd> base_average() const {
    if (!include_base) return std::nullopt;
    MeanStd a;
    for (const auto& t : tasks) {
      a.mean += *t.base_mean;
      a.std += *t.base_std;
    }
    if (!tasks.empty()) {
      a.mean /= static_cast<double>(tasks.size());
      a.std /= static_cast<double>(tasks.size());
    }
    return a;
  }

  const TaskSummary& task(std::string_view name) const {
    for (const auto& t : tasks) {
      if (t.task.name == name) return t;
    }
    fail(ErrorKind::config, "no task named '" + std::string(name) + "' in report");
  }

  /// Everything except timings; identical for identical spec and data.
  std::string deterministic_text() const {
    const auto pct = [](double v) { return text::format_fixed(100.0 * v, 1); };
    std::string s;
    s += "# " + std::string(kReportFormat) + "\n";
    s += "# spec_hash=" + hex64(spec_hash) + "\n";
    s += "# seed=" + std::to_string(seed) + "\n";
    for (const auto& h : header_lines) s += "# " + h + "\n";
    s += "# [summary] Gmean in percent, mean and sample std over repetitions\n";
    s += "task,target_class,train_targets,test_targets,test_outliers,ref_mean,ref_std";
    s += include_base ? ",base_mean,base_std\n" : "\n";
    for (const auto& t : tasks) {
      s += t.task.name + "," + t.task.target_class + "," + std::to_string(t.train_targets) + "," +
           std::to_string(t.test_targets) + "," + std::to_string(t.test_outliers) + "," + pct(t.ref_mean) + "," +
           pct(t.ref_std);
      if (include_base) s += "," + pct(*t.base_mean) + "," + pct(*t.base_std);
      s += "\n";
    }
    const auto ra = ref_average();
    s += "Aver.,,,,," + pct(ra.mean) + "," + pct(ra.std);
    if (const auto ba = base_average()) s += "," + pct(ba->mean) + "," + pct(ba->std);
    s += "\n";
    s += "# [runs] per repetition, full precision\n";
    s += "task,repetition,split_seed,ref_threshold,ref_tp,ref_fn,ref_tn,ref_fp,ref_gmean";
    s += include_base ? ",base_threshold,base_tp,base_fn,base_tn,base_fp,base_gmean\n" : "\n";
    const auto counts = [](const EvalResult& e) {
      return std::to_string(e.counts.tp) + "," + std::to_string(e.counts.fn) + "," + std::to_string(e.counts.tn) +
             "," + std::to_string(e.counts.fp);
    };
    for (const auto& r : runs) {
      s += r.task + "," + std::to_string(r.repetition) + "," + std::to_string(r.split_seed) + "," +
           text::format_short(r.ref_threshold) + "," + counts(r.ref) + "," + text::format_g17(r.ref.gmean);
      if (include_base) {
        s += "," + text::format_short(r.base_threshold) + "," + counts(*r.base) + "," +
             text::format_g17(r.base->gmean);
      }
      s += "\n";
    }
    return s;
  }

  std::string timing_text() const {
    std::string s = "# [timings] wall seconds per cell, not deterministic\ntask,repetition,seconds\n";
    for (const auto& r : runs) {
      s += r.task + "," + std::to_string(r.repetition) + "," + text::format_fixed(r.seconds, 6) + "\n";
    }
    return s;
  }

  std::string to_text() const { return deterministic_text() + timing_text(); }
};

namespace detail {

template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  // First failure in cell order, independent of scheduling.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::vector<std::size_t> targets_in(std::span<const std::size_t> idx, std::span<const Label> truth) {
  std::vector<std::size_t> out;
  for (std::size_t i : idx) {
    if (truth[i] == Label::target) out.push_back(i);
  }
  return out;
}

inline std::vector<Label> pick(std::span<const Label> truth, std::span<const std::size_t> idx) {
  std::vector<Label> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(truth[i]);
  return out;
}

struct CellOutcome {
  double threshold = kDefaultThreshold;
  EvalResult eval;
};

inline CellOutcome run_cell(const Matrix& x, const TaskPlan& plan, std::size_t rep, const BenchSpec& spec,
                            std::size_t iterations) {
  const auto& split = plan.splits.repetitions[rep];
  const auto train_targets = targets_in(split.train, plan.truth);
  const auto model = train_ref(x.select_rows(train_targets), iterations, spec.fold);

  CellOutcome out;
  out.threshold = spec.threshold;
  if (spec.mode == ThresholdMode::grid) {
    ModelConfig cfg = spec.model_config();
    cfg.iterations = iterations;
    out.threshold = select_threshold(x.select_rows(split.train), pick(plan.truth, split.train), cfg, spec.grid,
                                     spec.cv_folds, cv_seed(plan.seed, rep))
                        .threshold;
  }
  const auto test_scores = score_rows(x.select_rows(split.test), model, spec.metric);
  out.eval = evaluate(test_scores, pick(plan.truth, split.test), out.threshold);
  return out;
}

}  // namespace detail

/// Every task x repetition: train on training targets, fix or select the
/// threshold, score the test pool. Cells may run on `jobs` threads; the
/// report is assembled in task order either way.
inline BenchReport run_benchmark(const BenchSpec& spec, const BenchInputs& in, std::size_t jobs = 1) {
  spec.validate();
  const std::size_t reps = spec.repetitions;
  const std::size_t cells = in.tasks.size() * reps;
  std::vector<RunResult> runs(cells);

  detail::parallel_for(cells, jobs, [&](std::size_t c) {
    const auto& plan = in.tasks[c / reps];
    const std::size_t rep = c % reps;
    const auto& x = in.datasets[plan.dataset].data.features;
    const auto start = std::chrono::steady_clock::now();
    RunResult r;
    r.task = plan.task.name;
    r.repetition = rep;
    r.split_seed = derive_seed(plan.seed, rep);
    try {
      const auto ref = detail::run_cell(x, plan, rep, spec, spec.iterations);
      r.ref_threshold = ref.threshold;
      r.ref = ref.eval;
      if (spec.include_base) {
        const auto base = detail::run_cell(x, plan, rep, spec, 1);
        r.base_threshold = base.threshold;
        r.base = base.eval;
      }
    } catch (const Error& e) {
      fail(e.kind(), "task " + plan.task.name + " repetition " + std::to_string(rep) + ": " + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    runs[c] = std::move(r);
  });

  BenchReport report;
  report.spec_canonical = spec.canonical();
  report.spec_hash = spec.hash();
  report.seed = spec.seed;
  report.include_base = spec.include_base;
  report.header_lines.push_back("prng=" + std::string(kPrngName));
  report.header_lines.push_back(
      "seeds=task:mix64(seed+fnv1a64(task_name)) repetition:mix64(task_seed+r) cv:mix64(repetition_seed+1)");
  report.header_lines.push_back("split=stratified train_count=floor(train_fraction*class_size)");
  if (spec.mode == ThresholdMode::grid) {
    report.header_lines.push_back("cv=stratified k-fold, models fit on fold-training targets only");
  }
  report.header_lines.push_back("model_stddev=sample(N-1) degenerate_stddev=1");
  {
    std::string line;
    for (char ch : spec.canonical()) line += ch == '\n' ? ' ' : ch;
    report.header_lines.push_back(std::string(text::trim(line)));
  }
  for (const auto& d : in.datasets) {
    report.header_lines.push_back("dataset " + d.name + ": " +
                                  (d.description.empty() ? "in-memory" : d.description));
  }

  for (std::size_t t = 0; t < in.tasks.size(); ++t) {
    const auto& plan = in.tasks[t];
    TaskSummary s;
    s.task = plan.task;
    const auto& first = plan.splits.repetitions.front();
    s.train_targets = detail::targets_in(first.train, plan.truth).size();
    s.test_targets = detail::targets_in(first.test, plan.truth).size();
    s.test_outliers = first.test.size() - s.test_targets;
    std::vector<double> ref_g, base_g;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& run = runs[t * reps + r];
      ref_g.push_back(run.ref.gmean);
      if (run.base) base_g.push_back(run.base->gmean);
    }
    const auto ref_ms = mean_std(ref_g);
    s.ref_mean = ref_ms.mean;
    s.ref_std = ref_ms.std;
    if (spec.include_base) {
      const auto base_ms = mean_std(base_g);
      s.base_mean = base_ms.mean;
      s.base_std = base_ms.std;
    }
    report.tasks.push_back(std::move(s));
  }
  report.runs = std::move(runs);
  return report;
}

inline BenchReport run_benchmark(const BenchSpec& spec, std::size_t jobs = 1) {
  return run_benchmark(spec, prepare_bench(spec), jobs);
}

/// Test-set Gmean of the model truncated to 1, 2, ..., J steps.
struct LearningCurve {
  std::string task;
  std::size_t repetition = 0;
  std::vector<double> gmean;
};

/// One J-step model, replayed at every depth; valid because step i depends
/// only on steps before it.
inline LearningCurve learning_curve(const BenchSpec& spec, const BenchInputs& in, std::string_view task_name,
                                    std::size_t repetition) {
  spec.validate();
  if (spec.mode != ThresholdMode::fixed) {
    fail(ErrorKind::config, "learning curves need a fixed threshold; the spec selects it by grid search");
  }
  if (repetition >= spec.repetitions) {
    fail(ErrorKind::config, "repetition " + std::to_string(repetition) + " outside 0.." +
                                std::to_string(spec.repetitions - 1));
  }
  const auto it = std::find_if(in.tasks.begin(), in.tasks.end(),
                               [&](const TaskPlan& p) { return p.task.name == task_name; });
  if (it == in.tasks.end()) fail(ErrorKind::config, "no task named '" + std::string(task_name) + "'");
  const auto& plan = *it;
  const auto& x = in.datasets[plan.dataset].data.features;
  const auto& split = plan.splits.repetitions[repetition];

  const auto model = train_ref(x.select_rows(detail::targets_in(split.train, plan.truth)), spec.iterations, spec.fold);
  const std::size_t depth = model.iterations();
  std::vector<ConfusionCounts> counts(depth);
  for (std::size_t i : split.test) {
    const auto per_depth = depth_scores(x.row(i), model, spec.metric);
    const bool is_target = plan.truth[i] == Label::target;
    for (std::size_t d = 0; d < depth; ++d) {
      const bool accepted = label_for(per_depth[d], spec.threshold) == Label::target;
      auto& c = counts[d];
      if (is_target) {
        accepted ? ++c.tp : ++c.fn;
      } else {
        accepted ? ++c.fp : ++c.tn;
      }
    }
  }
  LearningCurve curve{plan.task.name, repetition, {}};
  curve.gmean.reserve(depth);
  for (const auto& c : counts) curve.gmean.push_back(gmean(c).gmean);
  return curve;
}

/// Point-wise mean of the curves of every task and repetition.
inline LearningCurve average_learning_curve(const BenchSpec& spec, const BenchInputs& in, std::size_t jobs = 1) {
  const std::size_t reps = spec.repetitions;
  std::vector<LearningCurve> curves(in.tasks.size() * reps);
  detail::parallel_for(curves.size(), jobs, [&](std::size_t c) {
    curves[c] = learning_curve(spec, in, in.tasks[c / reps].task.name, c % reps);
  });
  LearningCurve avg{"all", 0, std::vector<double>(spec.iterations, 0.0)};
  for (const auto& c : curves) {
    for (std::size_t d = 0; d < c.gmean.size(); ++d) avg.gmean[d] += c.gmean[d];
  }
  for (double& g : avg.gmean) g /= static_cast<double>(curves.size());
  return avg;
}

inline std::string curve_text(const BenchSpec& spec, const LearningCurve& curve, std::size_t cases = 1) {
  std::string s;
  s += "# " + std::string(kCurveFormat) + "\n";
  s += "# spec_hash=" + hex64(spec.hash()) + "\n";
  s += "# seed=" + std::to_string(spec.seed) + "\n";
  s += "# task=" + curve.task + " repetition=" + (curve.task == "all" ? "all" : std::to_string(curve.repetition)) +
       " cases=" + std::to_string(cases) + "\n";
  s += "# fold=" + std::string(to_string(spec.fold)) + " distance=" + std::string(to_string(spec.metric)) +
       " threshold=" + text::format_short(spec.threshold) + "\n";
  s += "iteration,gmean\n";
  for (std::size_t i = 0; i < curve.gmean.size(); ++i) {
    s += std::to_string(i + 1) + "," + text::format_g17(curve.gmean[i]) + "\n";
  }
  return s;
}

struct TimingRow {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::size_t iterations = 0;
  double median_seconds = 0.0;
};

/// Standard-normal n x dim matrix from SplitMix64(seed).
inline Matrix synthetic_normal(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Matrix x(n, dim);
  SplitMix64 rng(seed);
  for (double& v : x.values()) v = rng.normal();
  return x;
}

/// Median of three train_ref wall times per N on seeded synthetic data.
inline std::vector<TimingRow> timing_probe(std::span<const std::size_t> n_values, std::size_t dim,
                                           std::size_t iterations, std::uint64_t seed = 2024) {
  std::vector<TimingRow> rows;
  for (std::size_t n : n_values) {
    const auto x = synthetic_normal(n, dim, derive_seed(seed, n));
    std::vector<double> times;
    for (int run = 0; run < 3; ++run) {
      const auto start = std::chrono::steady_clock::now();
      const auto model = train_ref(x, iterations, FoldOp::abs);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      if (model.iterations() != iterations) fail(ErrorKind::numeric, "probe training returned a short model");
    }
    std::sort(times.begin(), times.end());
    rows.push_back({n, dim, iterations, times[1]});
  }
  return rows;
}

inline std::string probe_text(std::span<const TimingRow> rows) {
  std::string s = "# " + std::string(kProbeFormat) + "\n# median of 3 train_ref wall times\n";
  s += "n,dim,iterations,median_seconds,ratio_to_previous\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    s += std::to_string(r.n) + "," + std::to_string(r.dim) + "," + std::to_string(r.iterations) + "," +
         text::format_fixed(r.median_seconds, 6) + ",";
    s += i == 0 ? "" : text::format_fixed(r.median_seconds / rows[i - 1].median_seconds, 3);
    s += "\n";
  }
  return s;
}

}  // namespace refold
