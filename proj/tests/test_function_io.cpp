#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "z2lp/function_io.hpp"

using namespace z2lp;

TEST(FunctionIo, Parse) {
  const auto f = parse_function(R"({"level": 2, "samples": [-2, 0, -1, 0.5]})");
  EXPECT_EQ(f, StepFunction(2, {-2.0, 0.0, -1.0, 0.5}));
}

TEST(FunctionIo, RoundTripIsBitExact) {
  const StepFunction f{2, {0.1, -1.0 / 3.0, 1e-300, 123456789.123456789}};
  EXPECT_EQ(parse_function(serialize_function(f)), f);
}

TEST(FunctionIo, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "z2lp_function_io_test.json").string();
  const StepFunction f{1, {0.25, -7.0}};
  save_function(f, path);
  EXPECT_EQ(load_function(path), f);
  std::remove(path.c_str());
}

TEST(FunctionIo, Rejections) {
  EXPECT_THROW(parse_function("not json"), FormatError);
  EXPECT_THROW(parse_function("[1,2]"), FormatError);
  EXPECT_THROW(parse_function(R"({"samples": [1]})"), FormatError);
  EXPECT_THROW(parse_function(R"({"level": 1.5, "samples": [1, 2]})"), FormatError);
  EXPECT_THROW(parse_function(R"({"level": 1, "samples": [1, 2, 3]})"), FormatError);
  EXPECT_THROW(parse_function(R"({"level": 1, "samples": [1, "x"]})"), FormatError);
  EXPECT_THROW(parse_function(R"({"level": -1, "samples": []})"), FormatError);
  EXPECT_THROW(parse_function(R"({"level": 40, "samples": []})"), FormatError);
  EXPECT_THROW(load_function("/nonexistent/dir/f.json"), FormatError);
}
