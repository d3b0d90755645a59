#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "refold/model_io.hpp"
#include "refold/random.hpp"
#include "refold/text.hpp"

using namespace refold;

namespace {

ErrorKind kind_of(std::string_view content) {
  try {
    parse_model(content);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::io;
}

RefModel random_model(SplitMix64& rng) {
  const std::size_t n = 3 + rng.below(20), d = 1 + rng.below(5), j = 1 + rng.below(12);
  Matrix x(n, d);
  for (double& v : x.values()) v = rng.normal() * 1e3 * rng.uniform();
  return train_ref(x, j, kAllFoldOps[rng.below(kAllFoldOps.size())]);
}

}  // namespace

TEST(ModelIo, LayoutOfSmallModel) {
  const RefModel m{{StandardizerStep{{0.0, 2.0}, {1.0, 0.5}}}, FoldOp::cos_abs};
  EXPECT_EQ(serialize_model(m),
            "refold-model v1\nfold cos_abs\niterations 1\ndim 2\nstep mean 0 2 stddev 1 0.5\n");
}

TEST(ModelIo, RoundTripIsBitExact) {
  SplitMix64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_model(rng);
    const auto text = serialize_model(m);
    const auto back = parse_model(text);
    EXPECT_EQ(back, m);
    EXPECT_EQ(serialize_model(back), text);
  }
}

TEST(ModelIo, SaveAndLoad) {
  SplitMix64 rng(32);
  const auto m = random_model(rng);
  const auto p = std::filesystem::temp_directory_path() / "refold_model_test.txt";
  save_model(m, p);
  EXPECT_EQ(load_model(p), m);
  std::filesystem::remove(p);
}

TEST(ModelIo, MissingStepLine) {
  const std::string bad = "refold-model v1\nfold abs\niterations 3\ndim 1\nstep mean 0 stddev 1\nstep mean 1 stddev 2\n";
  try {
    parse_model(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::format);
    EXPECT_NE(std::string(e.what()).find("expected 3 step lines, found 2"), std::string::npos) << e.what();
  }
}

TEST(ModelIo, UnsupportedVersion) {
  try {
    parse_model("refold-model v9\nfold abs\niterations 1\ndim 1\nstep mean 0 stddev 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::format);
    EXPECT_NE(std::string(e.what()).find("v9"), std::string::npos);
  }
}

TEST(ModelIo, OtherMalformations) {
  EXPECT_EQ(kind_of("hello\n"), ErrorKind::format);
  EXPECT_EQ(kind_of("refold-model v1\nfold relu\niterations 1\ndim 1\nstep mean 0 stddev 1\n"), ErrorKind::format);
  EXPECT_EQ(kind_of("refold-model v1\nfold abs\niterations 1\ndim 2\nstep mean 0 stddev 1\n"), ErrorKind::format);
  EXPECT_EQ(kind_of("refold-model v1\nfold abs\niterations 1\ndim 1\nstep mean x stddev 1\n"), ErrorKind::format);
  EXPECT_EQ(kind_of("refold-model v1\nfold abs\niterations 1\ndim 1\nstep mean 0 stddev 1\nextra\n"),
            ErrorKind::format);
  EXPECT_NE(kind_of("refold-model v1\nfold abs\niterations 1\ndim 1\nstep mean 0 stddev -1\n"), ErrorKind::io);
}

TEST(Text, G17RoundTrips) {
  SplitMix64 rng(33);
  for (int i = 0; i < 2000; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform() * 40 - 20);
    EXPECT_EQ(*text::parse_double(text::format_g17(v)), v);
  }
}
