// Copyright 2026 The Signet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "signet/netgen.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "signet/rng.hpp"

namespace signet {
namespace {

BlockParams make(int n, double d_in, double p_in, double d_out, double p_out, std::uint64_t seed = 1) {
  BlockParams p;
  p.n = n;
  p.d_in = d_in;
  p.p_in_pos = p_in;
  p.d_out = d_out;
  p.p_out_pos = p_out;
  p.seed = seed;
  return p;
}

TEST(BlockParams, Validation) {
  EXPECT_NO_THROW(make(4, 0, 0, 1, 1).validate());
  EXPECT_THROW(make(5, 0.5, 0.5, 0.5, 0.5).validate(), ConfigError);
  EXPECT_THROW(make(2, 0.5, 0.5, 0.5, 0.5).validate(), ConfigError);
  EXPECT_THROW(make(10, 1.1, 0.5, 0.5, 0.5).validate(), ConfigError);
  EXPECT_THROW(make(10, 0.5, -0.1, 0.5, 0.5).validate(), ConfigError);
  EXPECT_THROW(make(10, 0.5, 0.5, 0.5, std::nan("")).validate(), ConfigError);
}

TEST(BlockParams, AnimositiesAreComplements) {
  const BlockParams p = make(10, 0.3, 0.8, 0.4, 0.25);
  EXPECT_DOUBLE_EQ(p.p_in_neg(), 0.2);
  EXPECT_DOUBLE_EQ(p.p_out_neg(), 0.75);
}

TEST(Derive, WorkedExample) {
  const DerivedParams dp = derive(make(100, 0.5, 0.4, 0.8, 0.2));
  EXPECT_NEAR(dp.avg_in, -0.10, 1e-12);
  EXPECT_NEAR(dp.avg_out, -0.48, 1e-12);
  EXPECT_NEAR(dp.mu, -0.29, 1e-12);
  EXPECT_NEAR(dp.nu, 0.19, 1e-12);
  EXPECT_NEAR(dp.var_avg, 0.5298, 1e-12);
  EXPECT_NEAR(dp.density, 0.65, 1e-12);
}

TEST(Derive, EmptyNetworkIsAllZero) {
  const DerivedParams dp = derive(make(10, 0.0, 0.9, 0.0, 0.1));
  EXPECT_EQ(dp.avg_in, 0.0);
  EXPECT_EQ(dp.avg_out, 0.0);
  EXPECT_EQ(dp.mu, 0.0);
  EXPECT_EQ(dp.nu, 0.0);
  EXPECT_EQ(dp.var_in, 0.0);
  EXPECT_EQ(dp.var_out, 0.0);
  EXPECT_EQ(dp.var_avg, 0.0);
}

TEST(Derive, SymmetricSignsGiveZeroMeans) {
  const DerivedParams dp = derive(make(10, 0.35, 0.5, 0.35, 0.5));
  EXPECT_EQ(dp.mu, 0.0);
  EXPECT_EQ(dp.nu, 0.0);
  EXPECT_DOUBLE_EQ(dp.var_avg, 0.35);
}

TEST(Derive, ConsistencyOverRandomTuples) {
  SplitMix64 g(2024);
  for (int t = 0; t < 1000; ++t) {
    const DerivedParams dp = derive(make(10, g.uniform(), g.uniform(), g.uniform(), g.uniform()));
    ASSERT_NEAR(dp.avg_in, dp.mu + dp.nu, 1e-15);
    ASSERT_NEAR(dp.avg_out, dp.mu - dp.nu, 1e-15);
    ASSERT_NEAR(dp.var_avg, 0.5 * (dp.var_in + dp.var_out), 1e-12);
    ASSERT_GE(dp.var_in, 0.0);
    ASSERT_GE(dp.var_out, 0.0);
    ASSERT_LE(std::abs(dp.mu), 1.0);
    ASSERT_LE(std::abs(dp.nu), 1.0);
  }
}

TEST(Generate, DegenerateProbabilitiesGiveAllPositive) {
  const SignedAdjacency a = generate(make(20, 1, 1, 1, 1));
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) EXPECT_EQ(a.at(i, j), i == j ? 0 : 1);
  }
}

TEST(Generate, NonzeroDiagonalAllowed) {
  BlockParams p = make(20, 1, 1, 1, 1);
  p.zero_diagonal = false;
  const SignedAdjacency a = generate(p);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.at(i, i), 1);
}

TEST(Generate, ZeroDensityGivesZeroMatrix) {
  const SignedAdjacency a = generate(make(30, 0, 0.7, 0, 0.2));
  EXPECT_EQ(a.to_dense().cwiseAbs().sum(), 0.0);
}

TEST(Generate, SymmetricValuesAndReproducible) {
  for (std::uint64_t seed : {1ULL, 99ULL, 123456789ULL}) {
    const BlockParams p = make(40, 0.6, 0.3, 0.4, 0.8, seed);
    const SignedAdjacency a = generate(p);
    const SignedAdjacency b = generate(p);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.diagonal_is_zero());
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        ASSERT_EQ(a.at(i, j), a.at(j, i));
        ASSERT_GE(a.at(i, j), -1);
        ASSERT_LE(a.at(i, j), 1);
      }
    }
  }
  EXPECT_NE(generate(make(40, 0.5, 0.5, 0.5, 0.5, 1)), generate(make(40, 0.5, 0.5, 0.5, 0.5, 2)));
}

TEST(Generate, IngroupPositiveFractionMatchesBinomial) {
  // n = 200, d_in = 0.5, p_in+ = 0.7: each ingroup pair is +1 with probability 0.35.
  const int n = 200;
  const SignedAdjacency a = generate(make(n, 0.5, 0.7, 0.3, 0.5, 77));
  long positive = 0, pairs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a.group(i) != a.group(j)) continue;
      ++pairs;
      positive += a.at(i, j) == 1;
    }
  }
  const double frac = static_cast<double>(positive) / pairs;
  const double se = std::sqrt(0.35 * 0.65 / pairs);
  EXPECT_NEAR(frac, 0.35, 3.0 * se);
}

TEST(Generate, BlockMeansConvergeToExpectedValues) {
  // |block mean - expected| < 4 standard errors in >= 99% of trials.
  const BlockParams base = make(60, 0.7, 0.65, 0.4, 0.25);
  const DerivedParams dp = derive(base);
  const int half = 30;
  const double in_pairs = 2.0 * half * (half - 1) / 2.0, out_pairs = half * half;
  const double se_in = std::sqrt(dp.var_in / in_pairs), se_out = std::sqrt(dp.var_out / out_pairs);
  int ok = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const SignedAdjacency a = generate(base.with_seed(stable_hash(5, {static_cast<std::uint64_t>(t)})));
    double s_in = 0, s_out = 0;
    for (int i = 0; i < 60; ++i) {
      for (int j = i + 1; j < 60; ++j) (a.group(i) == a.group(j) ? s_in : s_out) += a.at(i, j);
    }
    ok += std::abs(s_in / in_pairs - dp.avg_in) < 4 * se_in &&
          std::abs(s_out / out_pairs - dp.avg_out) < 4 * se_out;
  }
  EXPECT_GE(ok, 0.99 * trials);
}

TEST(ExpectedMatrix, BlockValuesForModerateStructure) {
  const Eigen::MatrixXd m = expected_matrix(make(10, 0.2, 0.7, 0.2, 0.33));
  EXPECT_NEAR(m(0, 1), 0.08, 1e-12);
  EXPECT_NEAR(m(7, 9), 0.08, 1e-12);
  EXPECT_NEAR(m(0, 9), -0.068, 1e-12);
  EXPECT_NEAR(m(9, 0), -0.068, 1e-12);
}

TEST(ExpectedMatrix, ZeroSignalGivesZeroMatrix) {
  EXPECT_EQ(expected_matrix(make(12, 0.4, 0.5, 0.9, 0.5)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ExpectedMatrix, IsSumOfTwoOuterProducts) {
  const BlockParams p = make(16, 0.6, 0.8, 0.3, 0.1);
  const DerivedParams dp = derive(p);
  const Eigen::VectorXd uh = homogeneous_vector(16), uc = contrast_vector(16);
  const Eigen::MatrixXd rebuilt = dp.mu * 16 * uh * uh.transpose() + dp.nu * 16 * uc * uc.transpose();
  EXPECT_LT((expected_matrix(p) - rebuilt).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(uh.dot(uc), 0.0, 1e-15);
  EXPECT_NEAR(uc.norm(), 1.0, 1e-15);
}

TEST(NoiseMatrix, ZeroDensityGivesZero) {
  EXPECT_EQ(noise_matrix(make(20, 0, 0.5, 0, 0.5)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(NoiseMatrix, MeanAndIngroupVarianceAtN1000) {
  BlockParams p = make(1000, 0.6, 0.7, 0.4, 0.2, 31);
  p.zero_diagonal = false;
  const DerivedParams dp = derive(p);
  const Eigen::MatrixXd x = noise_matrix(p);
  EXPECT_LT((x - x.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  // Mean of n^2 zero-mean entries: 0 +- 3 sigma / n.
  EXPECT_NEAR(x.mean(), 0.0, 3.0 * dp.sigma() / 1000.0);
  const Eigen::MatrixXd aa = x.topLeftCorner(500, 500);
  const double var_aa = aa.array().square().mean();
  EXPECT_NEAR(var_aa, dp.var_in, 0.05 * dp.var_in);
}

}  // namespace
}  // namespace signet
