#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "refold/dataset.hpp"

using namespace refold;

namespace {

ErrorKind kind_of(std::string_view content, const DatasetSchema& schema = {}) {
  try {
    parse_dataset(content, schema, "t.csv");
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::io;  // sentinel: nothing thrown
}

}  // namespace

TEST(ParseDataset, LabelLastByDefault) {
  const auto ds = parse_dataset("1,2,a\n3,4,b\n\n5,6,a\n", {});
  EXPECT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.dim(), 2u);
  EXPECT_EQ(ds.features, (Matrix{{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.class_id("b"), 1u);
  EXPECT_THROW(ds.class_id("zzz"), Error);
}

TEST(ParseDataset, HeaderNamedLabelAndFeatureSubset) {
  DatasetSchema s;
  s.header = true;
  s.label_name = "cls";
  s.feature_columns = {0, 2};
  const auto ds = parse_dataset("x,cls,y,z\r\n1,p,2,3\r\n4,q,5,6\r\n", s);
  EXPECT_EQ(ds.features, (Matrix{{1, 2}, {4, 5}}));
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(ds.labels, (std::vector<std::string>{"p", "q"}));
}

TEST(ParseDataset, CollapsedWhitespaceAndValueMap) {
  DatasetSchema s;
  s.delimiter = '\t';
  s.collapse_delimiters = true;
  s.value_map = {{"P", 1.0}, {"N", -1.0}};
  const auto ds = parse_dataset("P\t\tN\t1\nN\tP\t\t2\n", s);
  EXPECT_EQ(ds.features, (Matrix{{1, -1}, {-1, 1}}));
}

TEST(ParseDataset, ClassOrderOverridesAppearance) {
  DatasetSchema s;
  s.class_order = {"NB", "B"};
  const auto ds = parse_dataset("1,B\n2,NB\n", s);
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"NB", "B"}));
  s.class_order = {"NB", "X"};
  EXPECT_EQ(kind_of("1,B\n2,NB\n", s), ErrorKind::config);
}

TEST(ParseDataset, Errors) {
  EXPECT_EQ(kind_of(""), ErrorKind::parse);
  EXPECT_EQ(kind_of("1,2,a\n3,b\n"), ErrorKind::parse);
  EXPECT_EQ(kind_of("1,x,a\n"), ErrorKind::parse);
  EXPECT_EQ(kind_of("1,nan,a\n"), ErrorKind::parse);
  try {
    parse_dataset("1,2,a\n3,oops,b\n", {}, "f.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("f.csv:2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("'oops'"), std::string::npos) << e.what();
  }
}

TEST(DecodeText, Utf8BomAndUtf16) {
  EXPECT_EQ(detail::decode_text("\xEF\xBB\xBF" "a,b", "x"), "a,b");
  const std::string le("\xFF\xFE" "1\0,\0a\0", 8);
  EXPECT_EQ(detail::decode_text(le, "x"), "1,a");
  const std::string be("\xFE\xFF\0" "1\0,\0a", 8);
  EXPECT_EQ(detail::decode_text(be, "x"), "1,a");
}

TEST(LoadDataset, MissingFileIsIoError) {
  try {
    load_dataset("/nonexistent/file.csv", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(LoadDataset, ReadsFromDisk) {
  const auto p = std::filesystem::temp_directory_path() / "refold_ds_test.csv";
  std::ofstream(p) << "0.5,1.5,x\n2.5,3.5,y\n";
  const auto ds = load_dataset(p, {});
  EXPECT_EQ(ds.features, (Matrix{{0.5, 1.5}, {2.5, 3.5}}));
  std::filesystem::remove(p);
}
