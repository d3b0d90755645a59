#pragma once

#include <cstddef>
#include <filesystem>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "refold/dataset.hpp"
#include "refold/error.hpp"
#include "refold/text.hpp"

namespace refold {

/// One dataset of the manifest with the counts the loaded file must match.
struct RegistryEntry {
  std::string name;
  std::filesystem::path file;
  DatasetSchema schema;
  std::string task_prefix;
  std::string features_text = "all";
  std::size_t classes = 0;
  std::size_t samples = 0;
  std::size_t dim = 0;
  std::string note;
};

struct Registry {
  std::filesystem::path data_dir;
  std::vector<RegistryEntry> entries;

  const RegistryEntry& find(std::string_view name) const {
    for (const auto& e : entries) {
      if (e.name == name) return e;
    }
    fail(ErrorKind::config, "dataset '" + std::string(name) + "' is not in the manifest");
  }
};

namespace detail {

inline char parse_delimiter(const std::string& v) {
  if (v == "comma" || v == ",") return ',';
  if (v == "tab" || v == "\\t") return '\t';
  if (v == "space") return ' ';
  if (v == "semicolon" || v == ";") return ';';
  if (v.size() == 1) return v[0];
  fail(ErrorKind::config, "unknown delimiter '" + v + "'");
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(ErrorKind::config, key + ": expected true or false, got '" + v + "'");
}

/// "all", or a comma list of indices and inclusive ranges such as "2-33".
inline std::vector<std::size_t> parse_columns(const std::string& v) {
  std::vector<std::size_t> cols;
  if (text::trim(v) == "all") return cols;
  for (auto item : text::split(v, ',')) {
    item = text::trim(item);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      const auto c = text::parse_uint(item);
      if (!c) fail(ErrorKind::config, "bad column '" + std::string(item) + "'");
      cols.push_back(static_cast<std::size_t>(*c));
    } else {
      const auto lo = text::parse_uint(item.substr(0, dash));
      const auto hi = text::parse_uint(item.substr(dash + 1));
      if (!lo || !hi || *lo > *hi) fail(ErrorKind::config, "bad column range '" + std::string(item) + "'");
      for (auto c = *lo; c <= *hi; ++c) cols.push_back(static_cast<std::size_t>(c));
    }
  }
  return cols;
}

inline std::size_t parse_count(const std::string& v, const std::string& key) {
  const auto n = text::parse_uint(v);
  if (!n) fail(ErrorKind::config, key + ": expected a non-negative integer, got '" + v + "'");
  return static_cast<std::size_t>(*n);
}

}  // namespace detail

/// Parses the INI manifest. Every section is a dataset; keys:
///   file, delimiter, collapse_delimiters, header, label, features,
///   value_map (TOKEN:NUMBER,...), class_order, task_prefix,
///   classes, samples, dim, note.
inline Registry parse_registry(std::string_view content, const std::filesystem::path& data_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(content)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::parse, std::string("manifest: ") + e.what());
  }

  Registry reg;
  reg.data_dir = data_dir;
  for (const auto& [name, section] : tree) {
    if (section.empty()) fail(ErrorKind::config, "manifest: key '" + name + "' outside a dataset section");
    RegistryEntry e;
    e.name = name;
    e.task_prefix = name;
    bool have_counts[3] = {false, false, false};
    for (const auto& [key, node] : section) {
      const auto value = node.get_value<std::string>();
      const auto where = "manifest [" + name + "] " + key;
      if (key == "file") {
        e.file = value;
      } else if (key == "delimiter") {
        e.schema.delimiter = detail::parse_delimiter(value);
      } else if (key == "collapse_delimiters") {
        e.schema.collapse_delimiters = detail::parse_bool(value, where);
      } else if (key == "header") {
        e.schema.header = detail::parse_bool(value, where);
      } else if (key == "label") {
        if (const auto idx = text::parse_int(value)) {
          e.schema.label_index = *idx;
        } else {
          e.schema.label_name = value;
        }
      } else if (key == "features") {
        e.schema.feature_columns = detail::parse_columns(value);
        e.features_text = value;
      } else if (key == "value_map") {
        for (auto pair : text::split(value, ',')) {
          const auto colon = pair.find(':');
          const auto num = colon == std::string_view::npos ? std::nullopt : text::parse_double(pair.substr(colon + 1));
          if (!num) fail(ErrorKind::config, where + ": expected TOKEN:NUMBER pairs");
          e.schema.value_map.emplace(std::string(text::trim(pair.substr(0, colon))), *num);
        }
      } else if (key == "class_order") {
        for (auto c : text::split(value, ',')) e.schema.class_order.emplace_back(text::trim(c));
      } else if (key == "task_prefix") {
        e.task_prefix = value;
      } else if (key == "classes") {
        e.classes = detail::parse_count(value, where);
        have_counts[0] = true;
      } else if (key == "samples") {
        e.samples = detail::parse_count(value, where);
        have_counts[1] = true;
      } else if (key == "dim") {
        e.dim = detail::parse_count(value, where);
        have_counts[2] = true;
      } else if (key == "note") {
        e.note = value;
      } else {
        fail(ErrorKind::config, where + ": unknown key");
      }
    }
    if (e.file.empty()) fail(ErrorKind::config, "manifest [" + name + "]: missing 'file'");
    if (!have_counts[0] || !have_counts[1] || !have_counts[2]) {
      fail(ErrorKind::config, "manifest [" + name + "]: 'classes', 'samples' and 'dim' are required");
    }
    reg.entries.push_back(std::move(e));
  }
  return reg;
}

inline Registry load_registry(const std::filesystem::path& manifest, const std::filesystem::path& data_dir) {
  return parse_registry(read_text_file(manifest), data_dir);
}

/// Loads a registered dataset and checks it against the manifest counts.
inline Dataset load_registered(const Registry& reg, const RegistryEntry& entry) {
  const auto path = entry.file.is_absolute() ? entry.file : reg.data_dir / entry.file;
  if (!std::filesystem::exists(path)) {
    fail(ErrorKind::io, "dataset '" + entry.name + "' not found at " + path.string() +
                            "; place the UCI file there or set REFOLD_DATA_DIR");
  }
  auto ds = load_dataset(path, entry.schema);
  if (ds.class_names.size() != entry.classes || ds.size() != entry.samples || ds.dim() != entry.dim) {
    fail(ErrorKind::config, "manifest mismatch for '" + entry.name + "': expected C=" +
                                std::to_string(entry.classes) + " N=" + std::to_string(entry.samples) +
                                " D=" + std::to_string(entry.dim) + ", file has C=" +
                                std::to_string(ds.class_names.size()) + " N=" + std::to_string(ds.size()) +
                                " D=" + std::to_string(ds.dim()));
  }
  return ds;
}

}  // namespace refold
