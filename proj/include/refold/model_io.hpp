#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "refold/dataset.hpp"
#include "refold/error.hpp"
#include "refold/model.hpp"
#include "refold/text.hpp"

namespace refold {

// Model file, UTF-8 with LF endings, one record per line:
//
//   refold-model v1
//   fold abs
//   iterations 2
//   dim 1
//   step mean 0 stddev 1
//   step mean 0.66666666666666663 stddev 0.57735026918962584
//
// Values use 17 significant digits so every double round-trips exactly.
// Deviations use the N-1 divisor.

inline constexpr std::string_view kModelMagic = "refold-model";
inline constexpr std::string_view kModelVersion = "v1";

inline std::string serialize_model(const RefModel& model) {
  model.validate();
  std::string out;
  out += std::string(kModelMagic) + " " + std::string(kModelVersion) + "\n";
  out += "fold " + std::string(to_string(model.fold)) + "\n";
  out += "iterations " + std::to_string(model.iterations()) + "\n";
  out += "dim " + std::to_string(model.dim()) + "\n";
  for (const auto& step : model.steps) {
    out += "step mean";
    for (double v : step.mean) out += " " + text::format_g17(v);
    out += " stddev";
    for (double v : step.stddev) out += " " + text::format_g17(v);
    out += "\n";
  }
  return out;
}

inline RefModel parse_model(std::string_view content, const std::string& source = "<memory>") {
  const auto all_lines = text::lines(content);
  std::size_t pos = 0;
  const auto next_line = [&](std::string_view what) -> std::string_view {
    if (pos >= all_lines.size()) fail(ErrorKind::format, source + ": truncated, missing " + std::string(what));
    return all_lines[pos++];
  };
  const auto keyed_count = [&](std::string_view key) -> std::size_t {
    const auto line = next_line(key);
    const auto parts = text::split(line, ' ');
    if (parts.size() != 2 || parts[0] != key) {
      fail(ErrorKind::format, source + ":" + std::to_string(pos) + ": expected '" + std::string(key) + " <count>'");
    }
    const auto v = text::parse_uint(parts[1]);
    if (!v || *v == 0) fail(ErrorKind::format, source + ":" + std::to_string(pos) + ": bad " + std::string(key));
    return static_cast<std::size_t>(*v);
  };

  const auto magic = text::split(next_line("header"), ' ');
  if (magic.size() != 2 || magic[0] != kModelMagic) {
    fail(ErrorKind::format, source + ": not a refold model file");
  }
  if (magic[1] != kModelVersion) {
    fail(ErrorKind::format, source + ": unsupported model format version '" + std::string(magic[1]) +
                                "' (supported: " + std::string(kModelVersion) + ")");
  }

  RefModel model;
  {
    const auto parts = text::split(next_line("fold"), ' ');
    if (parts.size() != 2 || parts[0] != "fold") fail(ErrorKind::format, source + ":2: expected 'fold <name>'");
    try {
      model.fold = parse_fold_op(parts[1]);
    } catch (const Error& e) {
      fail(ErrorKind::format, source + ":2: " + e.what());
    }
  }
  const std::size_t iterations = keyed_count("iterations");
  const std::size_t dim = keyed_count("dim");

  for (std::size_t j = 0; j < iterations; ++j) {
    if (pos >= all_lines.size() || all_lines[pos].empty()) {
      fail(ErrorKind::format, source + ": expected " + std::to_string(iterations) + " step lines, found " +
                                  std::to_string(j));
    }
    const auto line_no = std::to_string(pos + 1);
    const auto parts = text::split(all_lines[pos++], ' ');
    if (parts.size() != 3 + 2 * dim || parts[0] != "step" || parts[1] != "mean" || parts[2 + dim] != "stddev") {
      fail(ErrorKind::format, source + ":" + line_no + ": step line does not hold " + std::to_string(dim) +
                                  " means and " + std::to_string(dim) + " deviations");
    }
    StandardizerStep step;
    for (std::size_t d = 0; d < dim; ++d) {
      const auto mu = text::parse_double(parts[2 + d]);
      const auto sd = text::parse_double(parts[3 + dim + d]);
      if (!mu || !sd) fail(ErrorKind::format, source + ":" + line_no + ": malformed number");
      step.mean.push_back(*mu);
      step.stddev.push_back(*sd);
    }
    model.steps.push_back(std::move(step));
  }
  for (; pos < all_lines.size(); ++pos) {
    if (!all_lines[pos].empty()) {
      fail(ErrorKind::format, source + ":" + std::to_string(pos + 1) + ": unexpected content after " +
                                  std::to_string(iterations) + " step lines");
    }
  }
  model.validate();
  return model;
}

inline void save_model(const RefModel& model, const std::filesystem::path& path) {
  const auto content = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorKind::io, "write error on " + path.string());
}

inline RefModel load_model(const std::filesystem::path& path) {
  return parse_model(read_text_file(path), path.string());
}

}  // namespace refold
