// refold command-line tool: train, predict, eval, bench, curve, probe.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "refold/refold.hpp"

namespace fs = std::filesystem;
using namespace refold;

namespace {

struct SchemaFlags {
  std::string delimiter = "comma";
  bool header = false;
  bool collapse = false;
  std::string label = "-1";
  std::string features = "all";
  std::string value_map;

  DatasetSchema build() const {
    DatasetSchema s;
    s.delimiter = detail::parse_delimiter(delimiter);
    s.header = header;
    s.collapse_delimiters = collapse;
    if (label == "none") {
      s.has_label = false;
    } else if (const auto idx = text::parse_int(label)) {
      s.label_index = *idx;
    } else {
      s.label_name = label;
    }
    s.feature_columns = detail::parse_columns(features);
    if (!value_map.empty()) {
      for (auto pair : text::split(value_map, ',')) {
        const auto colon = pair.find(':');
        const auto num = colon == std::string_view::npos ? std::nullopt : text::parse_double(pair.substr(colon + 1));
        if (!num) fail(ErrorKind::config, "--value-map: expected TOKEN:NUMBER pairs");
        s.value_map.emplace(std::string(text::trim(pair.substr(0, colon))), *num);
      }
    }
    return s;
  }
};

void add_schema_options(CLI::App* cmd, SchemaFlags& f) {
  cmd->add_option("--delimiter", f.delimiter, "Field delimiter: comma, tab, space, semicolon or one character");
  cmd->add_flag("--header", f.header, "First non-empty line is a header");
  cmd->add_flag("--collapse-delimiters", f.collapse, "Treat runs of the delimiter as one separator");
  cmd->add_option("--label", f.label, "Label column: index (negative counts from the end), header name, or none");
  cmd->add_option("--features", f.features, "Feature columns: all, or indices/ranges such as 0-3,5");
  cmd->add_option("--value-map", f.value_map, "Codes for non-numeric feature tokens, e.g. P:1,A:0,N:-1");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorKind::io, "write error on " + path.string());
}

BenchSpec load_spec_with_overrides(const fs::path& spec_path, const std::string& data_dir) {
  auto spec = load_bench_spec(spec_path);
  if (!data_dir.empty()) spec.data_dir = data_dir;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refold: one-class classification by repeated element-wise folding"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.allow_extras(false);

  // train
  SchemaFlags train_schema;
  std::string train_data, train_out = "model.txt", train_target, train_fold = "abs";
  std::size_t train_iters = kDefaultIterations;
  auto* train = app.add_subcommand("train", "Fit a model on target-class rows and write a model file");
  train->add_option("--data", train_data, "Dataset file")->required();
  add_schema_options(train, train_schema);
  train->add_option("--target-class", train_target, "Fit only rows with this label (default: all rows)");
  train->add_option("--fold", train_fold, "Fold operation: abs, sqr, cos_abs, cos, sin, tanh");
  train->add_option("--iters", train_iters, "Iterations J (1 gives the base classifier)");
  train->add_option("--out", train_out, "Model file to write");

  // predict
  SchemaFlags pred_schema;
  std::string pred_model, pred_data, pred_dist = "l1";
  double pred_threshold = kDefaultThreshold;
  auto* predict = app.add_subcommand("predict", "Score rows; prints index,score,label per row");
  predict->add_option("--model", pred_model, "Model file")->required();
  predict->add_option("--data", pred_data, "Dataset file")->required();
  add_schema_options(predict, pred_schema);
  predict->add_option("--threshold", pred_threshold, "Decision threshold T; target iff score <= T");
  predict->add_option("--dist", pred_dist, "Distance metric: l1 or l2 (divided by D)");

  // eval
  SchemaFlags eval_schema;
  std::string eval_data, eval_target, eval_fold = "abs", eval_dist = "l1", eval_threshold = "1", eval_out;
  std::string eval_grid = "0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1";
  std::size_t eval_iters = kDefaultIterations, eval_reps = 5, eval_cv = 5, eval_jobs = 1;
  double eval_fraction = 0.7;
  std::uint64_t eval_seed = 2024;
  bool eval_base = false;
  auto* eval = app.add_subcommand("eval", "Repeated holdout Gmean for one target class of a dataset");
  eval->add_option("--data", eval_data, "Dataset file")->required();
  add_schema_options(eval, eval_schema);
  eval->add_option("--target-class", eval_target, "Target class label")->required();
  eval->add_option("--fold", eval_fold, "Fold operation");
  eval->add_option("--iters", eval_iters, "Iterations J");
  eval->add_option("--dist", eval_dist, "Distance metric: l1 or l2");
  eval->add_option("--threshold", eval_threshold, "Fixed threshold, or 'grid' for cross-validated selection");
  eval->add_option("--grid", eval_grid, "Candidate thresholds for grid selection");
  eval->add_option("--cv-folds", eval_cv, "Folds for threshold selection");
  eval->add_option("--fraction", eval_fraction, "Training fraction per class");
  eval->add_option("--reps", eval_reps, "Repetitions");
  eval->add_option("--seed", eval_seed, "Master seed");
  eval->add_flag("--base", eval_base, "Also evaluate the base classifier");
  eval->add_option("--jobs", eval_jobs, "Worker threads");
  eval->add_option("--out", eval_out, "Report file (default: standard output)");

  // bench
  std::string bench_spec, bench_out = "bench_report.csv", data_dir;
  std::size_t bench_jobs = 1;
  auto* bench = app.add_subcommand("bench", "Run a benchmark spec and write the report");
  bench->add_option("--spec", bench_spec, "Benchmark spec file")->required();
  bench->add_option("--data-dir", data_dir, "Dataset directory (overrides the spec)")->envname("REFOLD_DATA_DIR");
  bench->add_option("--out", bench_out, "Report file");
  bench->add_option("--jobs", bench_jobs, "Worker threads");

  // curve
  std::string curve_spec, curve_task = "all", curve_out = "curve.csv", curve_data_dir;
  std::size_t curve_rep = 0, curve_jobs = 1;
  auto* curve = app.add_subcommand("curve", "Gmean per iteration for a task/repetition, or averaged over all");
  curve->add_option("--spec", curve_spec, "Benchmark spec file (fixed threshold)")->required();
  curve->add_option("--data-dir", curve_data_dir, "Dataset directory (overrides the spec)")->envname("REFOLD_DATA_DIR");
  curve->add_option("--task", curve_task, "Task name such as Iris2, or all");
  curve->add_option("--rep", curve_rep, "Repetition index (ignored for all)");
  curve->add_option("--out", curve_out, "Curve file");
  curve->add_option("--jobs", curve_jobs, "Worker threads");

  // probe
  std::vector<std::size_t> probe_sizes{10000, 20000, 40000};
  std::size_t probe_dim = 20, probe_iters = kDefaultIterations;
  std::uint64_t probe_seed = 2024;
  std::string probe_out = "probe.csv";
  auto* probe = app.add_subcommand("probe", "Time training on synthetic normal data for several N");
  probe->add_option("--sizes", probe_sizes, "Sample counts N")->delimiter(',');
  probe->add_option("--dim", probe_dim, "Dimensionality D");
  probe->add_option("--iters", probe_iters, "Iterations J");
  probe->add_option("--seed", probe_seed, "Seed for the synthetic data");
  probe->add_option("--out", probe_out, "Timing table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "refold: error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*train) {
      auto ds = load_dataset(train_data, train_schema.build());
      Matrix x = ds.features;
      if (!train_target.empty()) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < ds.labels.size(); ++i) {
          if (ds.labels[i] == train_target) rows.push_back(i);
        }
        if (rows.empty()) fail(ErrorKind::config, "no rows with class '" + train_target + "'");
        x = ds.features.select_rows(rows);
      }
      const auto model = train_ref(x, train_iters, parse_fold_op(train_fold));
      save_model(model, train_out);
      std::cout << "iterations=" << model.iterations() << " dim=" << model.dim() << " samples=" << x.rows() << "\n"
                << train_out << "\n";
    } else if (*predict) {
      const auto model = load_model(pred_model);
      const auto ds = load_dataset(pred_data, pred_schema.build());
      const auto metric = parse_distance_metric(pred_dist);
      check_threshold(pred_threshold);
      std::string out;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto p = classify(ds.features.row(i), model, metric, pred_threshold);
        out += std::to_string(i) + "," + text::format_g17(p.score) + "," + std::string(to_string(p.label)) + "\n";
      }
      std::cout << out;
    } else if (*eval) {
      auto ds = load_dataset(eval_data, eval_schema.build());
      BenchSpec spec;
      spec.datasets = {fs::path(eval_data).stem().string()};
      spec.fold = parse_fold_op(eval_fold);
      spec.metric = parse_distance_metric(eval_dist);
      spec.iterations = eval_iters;
      if (eval_threshold == "grid") {
        spec.mode = ThresholdMode::grid;
        spec.grid.values.clear();
        for (auto v : text::split(eval_grid, ',')) {
          const auto t = text::parse_double(v);
          if (!t) fail(ErrorKind::config, "--grid: bad value '" + std::string(v) + "'");
          spec.grid.values.push_back(*t);
        }
        spec.cv_folds = eval_cv;
      } else {
        const auto t = text::parse_double(eval_threshold);
        if (!t) fail(ErrorKind::config, "--threshold: expected a number or 'grid'");
        spec.threshold = *t;
      }
      spec.train_fraction = eval_fraction;
      spec.repetitions = eval_reps;
      spec.seed = eval_seed;
      spec.include_base = eval_base;
      ds.class_id(eval_target);
      std::vector<NamedDataset> named{{spec.datasets[0], spec.datasets[0], std::move(ds), "file=" + eval_data}};
      auto inputs = prepare_bench(spec, std::move(named));
      std::erase_if(inputs.tasks, [&](const TaskPlan& p) { return p.task.target_class != eval_target; });
      const auto report = run_benchmark(spec, inputs, eval_jobs).to_text();
      if (eval_out.empty()) {
        std::cout << report;
      } else {
        write_file(eval_out, report);
        std::cout << eval_out << "\n";
      }
    } else if (*bench) {
      const auto spec = load_spec_with_overrides(bench_spec, data_dir);
      write_file(bench_out, run_benchmark(spec, bench_jobs).to_text());
      std::cout << bench_out << "\n";
    } else if (*curve) {
      const auto spec = load_spec_with_overrides(curve_spec, curve_data_dir);
      if (spec.mode != ThresholdMode::fixed) {
        fail(ErrorKind::config, "learning curves need a fixed threshold; the spec selects it by grid search");
      }
      const auto inputs = prepare_bench(spec);
      std::string content;
      if (curve_task == "all") {
        content = curve_text(spec, average_learning_curve(spec, inputs, curve_jobs),
                             inputs.tasks.size() * spec.repetitions);
      } else {
        content = curve_text(spec, learning_curve(spec, inputs, curve_task, curve_rep));
      }
      write_file(curve_out, content);
      std::cout << curve_out << "\n";
    } else if (*probe) {
      const auto rows = timing_probe(probe_sizes, probe_dim, probe_iters, probe_seed);
      write_file(probe_out, probe_text(rows));
      std::cout << probe_out << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "refold: error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "refold: error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
