#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "z2lp/counterexample.hpp"

using namespace z2lp;

namespace {

// Builds the family point by point from its definition: x gets +alpha 2^j when
// x = k mod 2^{j+1} and -alpha 2^j when x = k + 2^j mod 2^{j+1}, for k < N_j.
std::vector<double> counterexample_by_definition(double alpha, const std::vector<std::uint64_t>& n, int level) {
  std::vector<double> f(std::size_t{1} << level, 0.0);
  for (std::size_t j = 0; j < n.size(); ++j) {
    const std::uint64_t mod = std::uint64_t{2} << j;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      for (std::uint64_t k = 0; k < n[j]; ++k) {
        if (x % mod == k) f[x] += alpha * std::pow(2.0, static_cast<double>(j));
        if (x % mod == k + (std::uint64_t{1} << j)) f[x] -= alpha * std::pow(2.0, static_cast<double>(j));
      }
    }
  }
  return f;
}

std::vector<std::uint64_t> profile_by_definition(const CounterexampleParams& p) {
  std::vector<std::uint64_t> n;
  for (int j = 0; j <= p.j1; ++j) {
    if (j <= p.j0)
      n.push_back(static_cast<std::uint64_t>(std::pow(2.0, j)));
    else
      n.push_back(static_cast<std::uint64_t>(p.beta / p.alpha / std::pow(2.0, j)));
  }
  return n;
}

}  // namespace

TEST(Counterexample, Validation) {
  EXPECT_NO_THROW((CounterexampleParams{1.0, 4.0, 1, 2}).validate());
  EXPECT_THROW((CounterexampleParams{1.0, 2.0, 1, 2}).validate(), std::invalid_argument);   // 4^{j0} > beta/alpha
  EXPECT_THROW((CounterexampleParams{1.0, 12.0, 1, 3}).validate(), std::invalid_argument);  // N_3 = 1.5
  EXPECT_THROW((CounterexampleParams{1.0, 64.0, 0, 2}).validate(), std::invalid_argument);  // N_1 = 32 > 2
  EXPECT_THROW((CounterexampleParams{0.0, 4.0, 1, 2}).validate(), std::invalid_argument);
  EXPECT_THROW((CounterexampleParams{1.0, -4.0, 1, 2}).validate(), std::invalid_argument);
  EXPECT_THROW((CounterexampleParams{1.0, 4.0, 2, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((CounterexampleParams{1.0, 4.0, -1, 2}).validate(), std::invalid_argument);
  EXPECT_THROW((CounterexampleParams{1.0, 1.0, 0, 40}).validate(), std::invalid_argument);
}

TEST(Counterexample, ValidationMessageNamesCondition) {
  try {
    CounterexampleParams{1.0, 12.0, 1, 3}.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("N_j"), std::string::npos);
  }
}

TEST(Counterexample, Profile) {
  const std::vector<std::uint64_t> expected{1, 2, 1};
  EXPECT_EQ(block_profile({1.0, 4.0, 1, 2}), expected);
  const CounterexampleParams p{0.5, 32.0, 2, 5};
  EXPECT_EQ(block_profile(p), profile_by_definition(p));
}

TEST(Counterexample, MatchesDefinition) {
  for (const CounterexampleParams p : {CounterexampleParams{1.0, 4.0, 1, 2}, CounterexampleParams{0.5, 32.0, 2, 5},
                                       CounterexampleParams{0.25, 16.0, 3, 6}, sweep_params(3)}) {
    const auto f = build_counterexample(p);
    const auto expected = counterexample_by_definition(p.alpha, profile_by_definition(p), p.level());
    ASSERT_EQ(f.size(), expected.size());
    for (std::size_t x = 0; x < expected.size(); ++x) EXPECT_DOUBLE_EQ(f[x], expected[x]);
  }
}

TEST(Counterexample, BlocksAreThePrescribedPieces) {
  const CounterexampleParams p{0.5, 32.0, 2, 5};
  const auto f = build_counterexample(p);
  const auto n = block_profile(p);
  const std::vector<double> v(f.samples().begin(), f.samples().end());
  for (int j = 0; j < p.level(); ++j) {
    const auto expected = j <= p.j1 ? prescribed_block(p.alpha, j, n[static_cast<std::size_t>(j)], p.level())
                                    : StepFunction::constant(p.level(), 0.0);
    const auto b = oracle::block(v, p.level(), j);
    for (std::size_t x = 0; x < b.size(); ++x) EXPECT_NEAR(b[x], expected[x], 1e-12);
  }
  EXPECT_NEAR(integral(f), 0.0, 1e-15);
}

TEST(Counterexample, SmallestInstance) {
  const auto r = norm_report({1.0, 4.0, 1, 2});
  EXPECT_EQ(r.level, 3);
  EXPECT_DOUBLE_EQ(r.computed.l2_squared, 9.0);
  EXPECT_DOUBLE_EQ(r.computed.besov_pos, 4.0);
  EXPECT_DOUBLE_EQ(r.computed.besov_neg, 1.0);
  EXPECT_DOUBLE_EQ(r.bv, 8.0);
  EXPECT_DOUBLE_EQ(r.ratio, 9.0 / 8.0);
  EXPECT_TRUE(r.consistent());

  const auto f = build_counterexample({1.0, 4.0, 1, 2});
  const std::vector<double> v(f.samples().begin(), f.samples().end());
  EXPECT_DOUBLE_EQ(oracle::l2sq(v), 9.0);
  EXPECT_DOUBLE_EQ(oracle::besov_1_inf_1(v, 3), 4.0);
  EXPECT_DOUBLE_EQ(oracle::besov_sup_linf(v, 3, -1.0), 1.0);
  EXPECT_DOUBLE_EQ(oracle::bv(v, 3), 8.0);
}

TEST(Counterexample, ExactArithmeticAgrees) {
  for (const CounterexampleParams p : {CounterexampleParams{1.0, 4.0, 1, 2}, CounterexampleParams{0.5, 32.0, 2, 5},
                                       CounterexampleParams{0.375, 6.0, 1, 2}, sweep_params(4)}) {
    const auto r = norm_report(p, {.exact_arithmetic = true});
    ASSERT_TRUE(r.exact_match.has_value());
    EXPECT_TRUE(*r.exact_match);
    EXPECT_TRUE(r.consistent());
    const auto d = norm_report(p);
    EXPECT_NEAR(d.computed.l2_squared, r.computed.l2_squared, 1e-12 * r.computed.l2_squared);
    EXPECT_NEAR(d.bv, r.bv, 1e-12 * r.bv);
  }
}

TEST(Counterexample, PredictionsMatchDirectSummation) {
  for (const CounterexampleParams p : {CounterexampleParams{0.5, 32.0, 2, 5}, CounterexampleParams{0.25, 16.0, 3, 6}}) {
    const auto f = counterexample_by_definition(p.alpha, profile_by_definition(p), p.level());
    const auto pred = predicted_norms(p);
    EXPECT_NEAR(oracle::l2sq(f), pred.l2_squared, 1e-12 * pred.l2_squared);
    EXPECT_NEAR(oracle::besov_1_inf_1(f, p.level()), pred.besov_pos, 1e-12 * pred.besov_pos);
    EXPECT_NEAR(oracle::besov_sup_linf(f, p.level(), -1.0), pred.besov_neg, 1e-12 * pred.besov_neg);
  }
}

TEST(Counterexample, BvWithinBesovBand) {
  for (int m = 1; m <= 4; ++m) {
    const auto r = norm_report(sweep_params(m));
    EXPECT_GE(r.bv, 2.0 * r.computed.besov_pos - 1e-9);
    EXPECT_LE(r.bv, 4.0 * r.computed.besov_pos + 1e-9);
  }
}

TEST(Counterexample, L2BandOverAlphaBeta) {
  for (int m = 1; m <= 8; ++m) {
    const auto p = sweep_params(m);
    const double excess = predicted_norms(p).l2_squared / (p.alpha * p.beta) - (p.j1 - p.j0);
    EXPECT_GT(excess, 1.0);
    EXPECT_LE(excess, 4.0 / 3.0);
  }
}

TEST(Counterexample, Sweep) {
  // l2 frozen from direct summation of the definition; bv from the brute-force scan at m = 1, 2.
  const std::vector<double> l2{9, 53, 277, 1365, 6485, 30037};
  for (int m = 1; m <= 2; ++m) {
    const auto p = sweep_params(m);
    const auto f = counterexample_by_definition(p.alpha, profile_by_definition(p), p.level());
    EXPECT_DOUBLE_EQ(oracle::l2sq(f), l2[static_cast<std::size_t>(m - 1)]);
    EXPECT_DOUBLE_EQ(oracle::bv(f, p.level()), 2.0 * std::pow(4.0, m));
  }
  const auto rows = blowup_sweep(1, 6);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].m, static_cast<int>(i) + 1);
    EXPECT_EQ(rows[i].level, 2 * rows[i].m + 1);
    EXPECT_DOUBLE_EQ(rows[i].l2_squared, l2[i]);
    EXPECT_DOUBLE_EQ(rows[i].bv, 2.0 * std::pow(4.0, rows[i].m));
    if (i > 0) {
      EXPECT_GT(rows[i].ratio, rows[i - 1].ratio);
    }
  }
  EXPECT_GE(rows[5].ratio, 2.0 * rows[1].ratio);
}

TEST(Counterexample, SweepRespectsCap) {
  EXPECT_THROW(blowup_sweep(1, 7, {.bv_cap = 14}), std::invalid_argument);
  EXPECT_NO_THROW(blowup_sweep(7, 7, {.bv_mode = BvMode::dyadic}));
  EXPECT_THROW(blowup_sweep(0, 3), std::invalid_argument);
  EXPECT_THROW(blowup_sweep(3, 2), std::invalid_argument);
}

TEST(Counterexample, RatioIsScaleInvariant) {
  // Scaling alpha and beta together scales f, so the ratio is unchanged.
  const auto a = norm_report({1.0, 16.0, 2, 3});
  const auto b = norm_report({0.25, 4.0, 2, 3});
  EXPECT_NEAR(a.ratio, b.ratio, 1e-12);
}
