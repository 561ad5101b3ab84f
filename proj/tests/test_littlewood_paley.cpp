#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "z2lp/littlewood_paley.hpp"

using namespace z2lp;

namespace {

StepFunction random_function(int level, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(std::size_t{1} << level);
  for (double& v : s) v = u(rng);
  return {level, s};
}

// Samples k / 2^20 with |k| < 2^20: sums over 2^J samples stay well inside 63 bits.
ExactStepFunction random_exact_function(int level, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> u(-(1 << 20) + 1, (1 << 20) - 1);
  std::vector<Dyadic> s(std::size_t{1} << level);
  for (Dyadic& v : s) v = Dyadic{u(rng), -20};
  return {level, s};
}

std::vector<double> as_vector(const StepFunction& f) { return {f.samples().begin(), f.samples().end()}; }

void expect_samples_near(const StepFunction& f, const std::vector<double>& expected, double tol) {
  ASSERT_EQ(f.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(f[k], expected[k], tol) << "sample " << k;
}

}  // namespace

TEST(LittlewoodPaley, ProjectionMatchesBruteForceAverage) {
  std::mt19937_64 rng(21);
  for (int level = 1; level <= 7; ++level) {
    const auto f = random_function(level, rng);
    for (int j = 0; j <= level; ++j) expect_samples_near(project(f, j), oracle::average(as_vector(f), level, j), 1e-14);
  }
}

TEST(LittlewoodPaley, BlockMatchesBruteForce) {
  std::mt19937_64 rng(22);
  for (int level = 1; level <= 7; ++level) {
    const auto f = random_function(level, rng);
    for (int j = 0; j < level; ++j) expect_samples_near(block(f, j), oracle::block(as_vector(f), level, j), 1e-14);
  }
}

TEST(LittlewoodPaley, RangeChecks) {
  const auto f = StepFunction::constant(3, 1.0);
  EXPECT_THROW(project(f, -1), std::out_of_range);
  EXPECT_THROW(project(f, 4), std::out_of_range);
  EXPECT_THROW(block(f, 3), std::out_of_range);
  EXPECT_THROW(sibling_identity_check(f, 3), std::out_of_range);
  EXPECT_EQ(project(f, 3), f);
}

TEST(LittlewoodPaley, TowerProperty) {
  std::mt19937_64 rng(23);
  const auto f = random_function(6, rng);
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j)
      expect_samples_near(project(project(f, i), j), as_vector(project(f, std::min(i, j))), 1e-14);
}

TEST(LittlewoodPaley, DecomposeSingleAtom) {
  const auto d = decompose(StepFunction(2, {1.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(d.mean, 0.25);
  ASSERT_EQ(d.blocks.size(), 2u);
  EXPECT_EQ(d.blocks[0], StepFunction(2, {0.25, -0.25, 0.25, -0.25}));
  EXPECT_EQ(d.blocks[1], StepFunction(2, {0.5, 0.0, -0.5, 0.0}));
}

TEST(LittlewoodPaley, DecomposeAgreesWithBlock) {
  std::mt19937_64 rng(24);
  const auto f = random_function(8, rng);
  const auto d = decompose(f);
  EXPECT_NEAR(d.mean, integral(f), 1e-15);
  for (int j = 0; j < 8; ++j) expect_samples_near(d.blocks[static_cast<std::size_t>(j)], as_vector(block(f, j)), 1e-15);
}

TEST(LittlewoodPaley, ReconstructionAndParseval) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const int level = 1 + static_cast<int>(rng() % 10);
    const auto f = random_function(level, rng);
    expect_samples_near(reconstruct(decompose(f)), as_vector(f), 1e-12);
    const auto p = parseval_check(f);
    EXPECT_NEAR(p.lhs, p.rhs, 1e-12 * p.lhs);
  }
}

TEST(LittlewoodPaley, BlocksHaveZeroMeanAndAreOrthogonal) {
  std::mt19937_64 rng(26);
  const auto f = random_function(6, rng);
  const auto d = decompose(f);
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    EXPECT_NEAR(integral(d.blocks[i]), 0.0, 1e-15);
    for (std::size_t j = i + 1; j < d.blocks.size(); ++j)
      EXPECT_NEAR(integral(d.blocks[i] * d.blocks[j]), 0.0, 1e-15);
  }
}

TEST(LittlewoodPaley, SiblingIdentity) {
  EXPECT_TRUE(sibling_identity_check(StepFunction::indicator(Coset{2, 1}, 3), 1));
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_function(7, rng);
    for (int j = 0; j < 7; ++j) EXPECT_TRUE(sibling_identity_check(f, j));
    const auto e = random_exact_function(7, rng);
    for (int j = 0; j < 7; ++j) EXPECT_TRUE(sibling_identity_check(e, j));
  }
}

TEST(LittlewoodPaley, ExactArithmeticIsExact) {
  std::mt19937_64 rng(28);
  const auto e = random_exact_function(8, rng);
  EXPECT_EQ(reconstruct(decompose(e)), e);
  const auto p = parseval_check(e);
  EXPECT_EQ(p.lhs, p.rhs);
}

TEST(LittlewoodPaley, LogNormProjectionOnZeroCoset) {
  // S_j log|x| on Q_{j,0}: the points of Q_{j,0} with valuation m in [j, J) have
  // relative measure 2^{j-m-1}, the remaining 2^{j-J} sits at the clamp -J.
  for (int level = 2; level <= 10; ++level) {
    const auto f = sample_log_norm(level);
    const auto brute = as_vector(f);
    for (int j = 0; j <= level; ++j) {
      double closed = -level * std::ldexp(1.0, j - level);
      for (int m = j; m < level; ++m) closed -= m * std::ldexp(1.0, j - m - 1);
      EXPECT_NEAR(oracle::average(brute, level, j)[0], closed, 1e-12);
      EXPECT_NEAR(project(f, j)[0], closed, 1e-12);
    }
  }
}

TEST(LittlewoodPaley, LogNormBlocks) {
  // Frozen from the brute-force oracle at J = 4: block j is -(1 - 2^{j-4}) on
  // Q_{j+1,0}, +(1 - 2^{j-4}) on Q_{j+1,2^j}, zero elsewhere.
  const auto f = sample_log_norm(4);
  const std::vector<std::vector<double>> frozen{
      {-0.9375, 0.9375, -0.9375, 0.9375, -0.9375, 0.9375, -0.9375, 0.9375,
       -0.9375, 0.9375, -0.9375, 0.9375, -0.9375, 0.9375, -0.9375, 0.9375},
      {-0.875, 0, 0.875, 0, -0.875, 0, 0.875, 0, -0.875, 0, 0.875, 0, -0.875, 0, 0.875, 0},
      {-0.75, 0, 0, 0, 0.75, 0, 0, 0, -0.75, 0, 0, 0, 0.75, 0, 0, 0},
      {-0.5, 0, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0},
  };
  for (int j = 0; j < 4; ++j) {
    expect_samples_near(StepFunction(4, frozen[static_cast<std::size_t>(j)]), oracle::block(as_vector(f), 4, j), 1e-14);
    expect_samples_near(block(f, j), frozen[static_cast<std::size_t>(j)], 1e-14);
  }
}
