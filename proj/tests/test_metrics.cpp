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

#include "signet/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "signet/balance.hpp"
#include "signet/netgen.hpp"
#include "signet/rng.hpp"

namespace signet {
namespace {

Eigen::VectorXi random_signs(int n, SplitMix64& g) {
  Eigen::VectorXi s(n);
  for (int i = 0; i < n; ++i) s(i) = g.uniform() < 0.5 ? 1 : -1;
  return s;
}

Eigen::VectorXi contrast_signs(int n) {
  Eigen::VectorXi s(n);
  for (int i = 0; i < n; ++i) s(i) = i < n / 2 ? 1 : -1;
  return s;
}

TEST(DiscreteAssortativity, PerfectAndDegenerate) {
  EXPECT_NEAR(*discrete_assortativity({{{0.5, 0.0}, {0.0, 0.5}}}), 1.0, 1e-15);
  EXPECT_NEAR(*discrete_assortativity({{{0.0, 0.5}, {0.5, 0.0}}}), -1.0, 1e-15);
  EXPECT_NEAR(*discrete_assortativity({{{0.25, 0.25}, {0.25, 0.25}}}), 0.0, 1e-15);
  // All mass in one group: sum a_i^2 = 1.
  EXPECT_FALSE(discrete_assortativity({{{1.0, 0.0}, {0.0, 0.0}}}).has_value());
}

TEST(Assortativity, TwoFactionStateIsPerfectlyAssortative) {
  const Assortativity a = assortativity(sign_outer_product(contrast_signs(10)));
  EXPECT_NEAR(a.r_pos, 1.0, 1e-12);
  EXPECT_NEAR(a.r_neg, -1.0, 1e-12);
  EXPECT_NEAR(a.r, 1.0, 1e-12);
}

TEST(Assortativity, AllPositiveStateIsNeutral) {
  const Assortativity a = assortativity(sign_outer_product(Eigen::VectorXi::Ones(10)));
  EXPECT_NEAR(a.r_pos, 0.0, 1e-12);
  EXPECT_TRUE(a.neg_degenerate);
  EXPECT_NEAR(a.r, 0.0, 1e-12);
}

TEST(Assortativity, CompleteGraphWithoutSelfTies) {
  SignedAdjacency a(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) a.set(i, j, 1);
  }
  EXPECT_NEAR(assortativity(a).r_pos, -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(testing::newman_from_pair_counts(1, 4, 1), -1.0 / 3.0, 1e-12);
}

TEST(Assortativity, EmptyNetworkRejected) {
  EXPECT_THROW(assortativity(SignedAdjacency(6)), ConfigError);
}

// Independent pair-count oracle on generated networks without self-ties.
TEST(Assortativity, AgreesWithPairCountOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BlockParams p;
    p.n = 60;
    p.d_in = 0.6;
    p.p_in_pos = 0.7;
    p.d_out = 0.5;
    p.p_out_pos = 0.3;
    p.seed = seed;
    const SignedAdjacency a = generate(p);
    double pos[3] = {0, 0, 0}, neg[3] = {0, 0, 0};  // AA, AB, BB
    for (int i = 0; i < p.n; ++i) {
      for (int j = i + 1; j < p.n; ++j) {
        const int k = a.group(i) + a.group(j);
        if (a.at(i, j) > 0) pos[k] += 1;
        if (a.at(i, j) < 0) neg[k] += 1;
      }
    }
    const Assortativity r = assortativity(a);
    EXPECT_NEAR(r.r_pos, testing::newman_from_pair_counts(pos[0], pos[1], pos[2]), 1e-12);
    EXPECT_NEAR(r.r_neg, testing::newman_from_pair_counts(neg[0], neg[1], neg[2]), 1e-12);
  }
}

TEST(Assortativity, InvariantUnderGlobalFlipAndGroupSwap) {
  SplitMix64 g(5);
  for (int t = 0; t < 50; ++t) {
    const Eigen::VectorXi s = random_signs(40, g);
    const Assortativity base = assortativity(sign_outer_product(s));
    const Assortativity flipped = assortativity(sign_outer_product(-s));
    EXPECT_EQ(base.r, flipped.r);
    // Relabel groups: node i goes to position n - 1 - i.
    const Eigen::VectorXi swapped = s.reverse();
    EXPECT_NEAR(assortativity(sign_outer_product(swapped)).r, base.r, 1e-12);
  }
}

TEST(Assortativity, RandomFactionsAreNearNeutral) {
  SplitMix64 g(123);
  double sum = 0.0;
  for (int t = 0; t < 200; ++t) sum += assortativity(sign_outer_product(random_signs(100, g))).r;
  EXPECT_LT(std::abs(sum / 200.0), 0.05);
}

TEST(Assortativity, ExpectedCountsTrendWithAnimosity) {
  // Holding p_in+ fixed, more outgroup animosity means more assortative.
  double prev = -2.0;
  for (double p_out_neg = 0.0; p_out_neg <= 1.0; p_out_neg += 0.1) {
    const auto e = testing::expected_assortativity(100, 0.4, 0.4, 0.7, 1.0 - p_out_neg);
    EXPECT_GT(e.r, prev);
    prev = e.r;
  }
}

TEST(Homogeneity, Examples) {
  EXPECT_DOUBLE_EQ(homogeneity(Eigen::VectorXd::Ones(8)), 1.0);
  Eigen::VectorXd v(4);
  v << 1, 1, -1, -1;
  EXPECT_DOUBLE_EQ(homogeneity(v), 0.5);
  v << -1, -1, -1, 1;
  EXPECT_DOUBLE_EQ(homogeneity(v), 0.75);
  v << 0, 0, -1, 1;  // zeros count as positive
  EXPECT_DOUBLE_EQ(homogeneity(v), 0.75);
  EXPECT_THROW(homogeneity(Eigen::VectorXd::Zero(4)), ConfigError);
}

TEST(Homogeneity, BoundsAndSignInvariance) {
  SplitMix64 g(8);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(g.uniform() * 50);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = g.uniform() - 0.5;
    const double h = homogeneity(v);
    ASSERT_GE(h, 0.5);
    ASSERT_LE(h, 1.0);
    ASSERT_EQ(h, homogeneity(-v));
  }
}

TEST(ZMetric, Examples) {
  EXPECT_DOUBLE_EQ(z_metric(1.0, 0.5), 1.0);   // two factions
  EXPECT_DOUBLE_EQ(z_metric(0.0, 1.0), -1.0);  // harmonious
  EXPECT_DOUBLE_EQ(z_metric(0.0, 0.5), 0.0);   // random split
}

TEST(IsBalanced, Examples) {
  EXPECT_TRUE(is_balanced(sign_outer_product(contrast_signs(6))).balanced);
  SignedAdjacency a = sign_outer_product(Eigen::VectorXi::Ones(5));
  a.set(1, 3, -1);
  const BalanceReport r = is_balanced(a);
  EXPECT_FALSE(r.balanced);
  ASSERT_TRUE(r.violating_triad.has_value());
  const auto t = *r.violating_triad;
  EXPECT_LT(a.at(t[0], t[1]) * a.at(t[1], t[2]) * a.at(t[0], t[2]), 0);
  SignedAdjacency incomplete = sign_outer_product(Eigen::VectorXi::Ones(5));
  incomplete.set(2, 4, 0);
  EXPECT_THROW(is_balanced(incomplete), ConfigError);
}

TEST(IsBalanced, AgreesWithTriadEnumeration) {
  SplitMix64 g(77);
  for (int t = 0; t < 300; ++t) {
    const int n = 3 + static_cast<int>(g.uniform() * 12);
    SignedAdjacency a = sign_outer_product(random_signs(n, g));
    if (t % 2) {
      const int i = static_cast<int>(g.uniform() * n);
      const int j = static_cast<int>(g.uniform() * n);
      if (i != j) a.set(i, j, -a.at(i, j));
    }
    ASSERT_EQ(is_balanced(a).balanced, testing::all_triads_balanced(a.to_dense()));
  }
}

TEST(MeasureOutcome, SignOuterProductsAreBalancedWithUnitR) {
  SplitMix64 g(31);
  for (int t = 0; t < 50; ++t) {
    const int n = 10 + 2 * static_cast<int>(g.uniform() * 20);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = g.uniform() - 0.5;
    Eigen::VectorXi s(n);
    for (int i = 0; i < n; ++i) s(i) = v(i) >= 0.0 ? 1 : -1;
    const OutcomeRecord rec = measure_outcome(sign_outer_product(s), v);
    ASSERT_TRUE(rec.balanced);
    ASSERT_GE(rec.r, -1.0 - 1e-12);
    ASSERT_LE(rec.r, 1.0 + 1e-12);
    ASSERT_DOUBLE_EQ(rec.z, rec.r - 2.0 * rec.h + 1.0);
  }
}

}  // namespace
}  // namespace signet
