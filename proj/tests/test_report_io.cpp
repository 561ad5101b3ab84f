#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "z2lp/report_io.hpp"

using namespace z2lp;

TEST(ReportIo, NormValueJson) {
  const auto v = evaluate_norm(StepFunction::indicator(Coset{1, 0}, 1),
                               {.family = NormFamily::besov, .s = 1.0, .p = 1.0, .q = kInfinity});
  const auto j = to_json(v);
  EXPECT_EQ(j["value"].get<double>(), 0.5);
  EXPECT_EQ(j["spec"]["family"], "besov");
  EXPECT_EQ(j["spec"]["q"], "inf");
  EXPECT_EQ(j["spec"]["p"].get<double>(), 1.0);
  EXPECT_EQ(j["level"], 1);
}

TEST(ReportIo, InequalityReportShape) {
  const auto j = to_json(bv_inequality_report(StepFunction::indicator(Coset{1, 0}, 1)));
  for (const char* key : {"spec", "lhs", "rhs", "ratio", "status", "details"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["ratio"].get<double>(), 1.0);
  EXPECT_EQ(j["details"]["bv"].get<double>(), 1.0);
}

TEST(ReportIo, VacuousRatioIsNull) {
  const auto j = to_json(bv_inequality_report(StepFunction::constant(2, 1.0)));
  EXPECT_EQ(j["status"], "vacuous");
  EXPECT_TRUE(j["ratio"].is_null());
}

TEST(ReportIo, CounterexampleJson) {
  const auto j = to_json(norm_report({1.0, 4.0, 1, 2}, {.exact_arithmetic = true}));
  EXPECT_EQ(j["l2_squared"].get<double>(), 9.0);
  EXPECT_EQ(j["computed"]["besov_pos"].get<double>(), 4.0);
  EXPECT_EQ(j["predicted"]["besov_neg"].get<double>(), 1.0);
  EXPECT_EQ(j["bv"].get<double>(), 8.0);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["details"]["exact_match"], true);
  EXPECT_EQ(j["profile"], nlohmann::json::array({1, 2, 1}));
}

TEST(ReportIo, SweepCsv) {
  const std::string csv = sweep_csv(blowup_sweep(1, 2));
  std::istringstream in(csv);
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, kSweepCsvHeader);
  EXPECT_EQ(row1, "1,1,4,1,2,3,9,4,1,8,1.125");
  EXPECT_EQ(row2, "2,1,16,2,4,5,53,16,1,32,1.65625");
  EXPECT_FALSE(std::getline(in, extra));
}

TEST(ReportIo, NumbersRoundTrip) {
  EXPECT_EQ(std::stod(detail::fmt_num(0.1)), 0.1);
  EXPECT_EQ(std::stod(detail::fmt_num(1.0 / 3.0)), 1.0 / 3.0);
}
