#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "refold/error.hpp"
#include "refold/matrix.hpp"
#include "refold/text.hpp"

namespace refold {

/// How to read a delimited text dataset. Column indices are 0-based.
struct DatasetSchema {
  char delimiter = ',';
  bool header = false;
  /// Treat runs of the delimiter as one separator (tab-aligned files).
  bool collapse_delimiters = false;
  bool has_label = true;
  /// Label column; negative values count from the end (-1 is the last column).
  long long label_index = -1;
  /// Label column by header name; takes precedence over label_index.
  std::string label_name;
  /// Feature columns; empty means every column except the label.
  std::vector<std::size_t> feature_columns;
  /// Numeric codes for non-numeric feature tokens, e.g. P=1, A=0, N=-1.
  std::map<std::string, double, std::less<>> value_map;
  /// Explicit class order; empty means order of first appearance.
  std::vector<std::string> class_order;
};

struct Dataset {
  Matrix features;
  std::vector<std::string> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
  std::string source;

  std::size_t size() const noexcept { return features.rows(); }
  std::size_t dim() const noexcept { return features.cols(); }

  std::size_t class_id(std::string_view name) const {
    const auto it = std::find(class_names.begin(), class_names.end(), name);
    if (it == class_names.end()) {
      fail(ErrorKind::config, "class '" + std::string(name) + "' does not occur in " + source);
    }
    return static_cast<std::size_t>(it - class_names.begin());
  }
};

namespace detail {

inline void append_utf8(std::string& out, unsigned code) {
  if (code < 0x80) {
    out += static_cast<char>(code);
  } else if (code < 0x800) {
    out += static_cast<char>(0xC0 | (code >> 6));
    out += static_cast<char>(0x80 | (code & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (code >> 12));
    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (code & 0x3F));
  }
}

/// Strips a UTF-8 BOM and transcodes BOM-marked UTF-16 (BMP only) to UTF-8.
inline std::string decode_text(std::string raw, const std::string& source) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(raw[i]); };
  if (raw.size() >= 3 && byte(0) == 0xEF && byte(1) == 0xBB && byte(2) == 0xBF) return raw.substr(3);
  if (raw.size() >= 2 && ((byte(0) == 0xFF && byte(1) == 0xFE) || (byte(0) == 0xFE && byte(1) == 0xFF))) {
    const bool little = byte(0) == 0xFF;
    if (raw.size() % 2 != 0) fail(ErrorKind::parse, source + ": truncated UTF-16 text");
    std::string out;
    out.reserve(raw.size() / 2);
    for (std::size_t i = 2; i + 1 < raw.size(); i += 2) {
      const unsigned code = little ? (byte(i) | (byte(i + 1) << 8)) : ((byte(i) << 8) | byte(i + 1));
      if (code >= 0xD800 && code <= 0xDFFF) {
        fail(ErrorKind::parse, source + ": UTF-16 surrogate pairs are not supported");
      }
      append_utf8(out, code);
    }
    return out;
  }
  return raw;
}

}  // namespace detail

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  std::string raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) fail(ErrorKind::io, "read error on " + path.string());
  return detail::decode_text(std::move(raw), path.string());
}

inline Dataset parse_dataset(std::string_view content, const DatasetSchema& schema,
                             const std::string& source = "<memory>") {
  Dataset ds;
  ds.source = source;

  std::optional<std::size_t> ncols;
  std::size_t label_col = 0;
  std::vector<std::size_t> feature_cols;
  std::vector<std::string> header_names;

  const auto resolve_columns = [&](std::size_t line_no) {
    const std::size_t n = *ncols;
    if (schema.has_label) {
      if (!schema.label_name.empty()) {
        const auto it = std::find(header_names.begin(), header_names.end(), schema.label_name);
        if (it == header_names.end()) {
          fail(ErrorKind::parse, source + ": no column named '" + schema.label_name + "' in header");
        }
        label_col = static_cast<std::size_t>(it - header_names.begin());
      } else {
        const long long idx = schema.label_index < 0 ? static_cast<long long>(n) + schema.label_index
                                                     : schema.label_index;
        if (idx < 0 || idx >= static_cast<long long>(n)) {
          fail(ErrorKind::parse, source + ":" + std::to_string(line_no) + ": label column " +
                                     std::to_string(schema.label_index) + " outside " +
                                     std::to_string(n) + " fields");
        }
        label_col = static_cast<std::size_t>(idx);
      }
    }
    if (schema.feature_columns.empty()) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!schema.has_label || c != label_col) feature_cols.push_back(c);
      }
    } else {
      feature_cols = schema.feature_columns;
      for (std::size_t c : feature_cols) {
        if (c >= n) {
          fail(ErrorKind::parse, source + ": feature column " + std::to_string(c) + " outside " +
                                     std::to_string(n) + " fields");
        }
        if (schema.has_label && c == label_col) {
          fail(ErrorKind::config, source + ": label column is also listed as a feature column");
        }
      }
    }
    if (feature_cols.empty()) fail(ErrorKind::config, source + ": schema selects no feature columns");
  };

  bool header_pending = schema.header;
  std::size_t line_no = 0;
  Sample row;
  for (auto line : text::lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto fields = text::split(line, schema.delimiter, schema.collapse_delimiters);
    if (header_pending) {
      header_pending = false;
      ncols = fields.size();
      for (auto f : fields) header_names.emplace_back(text::trim(f));
      resolve_columns(line_no);
      for (std::size_t c : feature_cols) ds.feature_names.push_back(header_names[c]);
      continue;
    }
    if (!ncols) {
      ncols = fields.size();
      resolve_columns(line_no);
    }
    if (fields.size() != *ncols) {
      fail(ErrorKind::parse, source + ":" + std::to_string(line_no) + ": expected " + std::to_string(*ncols) +
                                 " fields, found " + std::to_string(fields.size()));
    }
    row.clear();
    for (std::size_t c : feature_cols) {
      const auto token = text::trim(fields[c]);
      std::optional<double> value;
      if (const auto it = schema.value_map.find(token); it != schema.value_map.end()) {
        value = it->second;
      } else {
        value = text::parse_double(token);
      }
      if (!value || !std::isfinite(*value)) {
        fail(ErrorKind::parse, source + ":" + std::to_string(line_no) + ": column " + std::to_string(c + 1) +
                                   ": non-numeric feature value '" + std::string(token) + "'");
      }
      row.push_back(*value);
    }
    ds.features.append_row(row);
    if (schema.has_label) {
      const auto label = text::trim(fields[label_col]);
      if (label.empty()) {
        fail(ErrorKind::parse, source + ":" + std::to_string(line_no) + ": empty class label");
      }
      ds.labels.emplace_back(label);
      if (std::find(ds.class_names.begin(), ds.class_names.end(), label) == ds.class_names.end()) {
        ds.class_names.emplace_back(label);
      }
    }
  }

  if (ds.features.empty()) fail(ErrorKind::parse, source + ": dataset has no data rows");

  if (!schema.class_order.empty()) {
    auto sorted_seen = ds.class_names;
    auto sorted_order = schema.class_order;
    std::sort(sorted_seen.begin(), sorted_seen.end());
    std::sort(sorted_order.begin(), sorted_order.end());
    if (sorted_seen != sorted_order) {
      fail(ErrorKind::config, source + ": declared class order does not match the labels in the file");
    }
    ds.class_names = schema.class_order;
  }
  return ds;
}

inline Dataset load_dataset(const std::filesystem::path& path, const DatasetSchema& schema) {
  return parse_dataset(read_text_file(path), schema, path.string());
}

}  // namespace refold
