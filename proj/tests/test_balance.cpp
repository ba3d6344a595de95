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

#include "signet/balance.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "signet/metrics.hpp"
#include "signet/netgen.hpp"
#include "signet/rng.hpp"

namespace signet {
namespace {

Eigen::MatrixXd scalar(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

BlockParams strong_params(std::uint64_t seed) {
  BlockParams p;
  p.n = 50;
  p.d_in = 0.8;
  p.p_in_pos = 0.9;
  p.d_out = 0.8;
  p.p_out_pos = 0.1;
  p.seed = seed;
  return p;
}

TEST(ClosedForm, Examples) {
  const Eigen::MatrixXd y0 = Eigen::Vector2d(2.0, -1.0).asDiagonal();
  EXPECT_EQ(closed_form(y0, 0.0), y0);
  EXPECT_NEAR(closed_form(scalar(1.0), 0.5)(0, 0), 2.0, 1e-15);
  const Eigen::MatrixXd y = closed_form(y0, 0.25);
  EXPECT_NEAR(y(0, 0), 4.0, 1e-14);
  EXPECT_NEAR(y(1, 1), -0.8, 1e-14);
  EXPECT_EQ(y(0, 1), 0.0);
}

TEST(ClosedForm, Errors) {
  EXPECT_THROW(closed_form(scalar(1.0), -0.1), ConfigError);
  EXPECT_THROW(closed_form(scalar(1.0), 1.0), BlowupError);
  EXPECT_THROW(closed_form(scalar(1.0), 2.0), BlowupError);
  try {
    closed_form(scalar(4.0), 0.3);
    FAIL();
  } catch (const BlowupError& e) {
    EXPECT_DOUBLE_EQ(e.t_star(), 0.25);
  }
  // Non-positive spectrum never blows up.
  EXPECT_NEAR(closed_form(scalar(-1.0), 100.0)(0, 0), -1.0 / 101.0, 1e-15);
}

TEST(BlowupTime, Examples) {
  EXPECT_DOUBLE_EQ(blowup_time(Eigen::Vector2d(2.0, -1.0).asDiagonal().toDenseMatrix()).t_star, 0.5);
  EXPECT_THROW(blowup_time(scalar(-1.0)), NumericalError);
  EXPECT_THROW(blowup_time(Eigen::MatrixXd::Zero(3, 3)), NumericalError);
}

TEST(Numeric, ScalarMatchesExactSolution) {
  const Eigen::MatrixXd y = integrate_numeric(scalar(1.0), 0.5, 1e-4);
  EXPECT_NEAR(y(0, 0), 2.0, 1e-8);
}

TEST(Numeric, ZeroStaysZeroAndSymmetryHolds) {
  EXPECT_EQ(integrate_numeric(Eigen::MatrixXd::Zero(4, 4), 1.0, 0.1), Eigen::MatrixXd::Zero(4, 4));
  const Eigen::MatrixXd y0 = initial_connectivity(generate(strong_params(2)));
  const double t_star = blowup_time(y0).t_star;
  integrate_numeric(y0, 0.5 * t_star, 1e-3 * t_star, [](double, const Eigen::MatrixXd& y) {
    ASSERT_EQ(y, y.transpose());
  });
}

TEST(Numeric, ObserverSeesEveryStepAndEndpoint) {
  int calls = 0;
  double last = -1.0;
  integrate_numeric(scalar(0.1), 0.35, 0.1, [&](double t, const Eigen::MatrixXd&) {
    ++calls;
    EXPECT_GT(t, last);
    last = t;
  });
  EXPECT_EQ(calls, 5);  // t = 0, 0.1, 0.2, 0.3, 0.35
  EXPECT_DOUBLE_EQ(last, 0.35);
}

TEST(Numeric, Errors) {
  EXPECT_THROW(integrate_numeric(scalar(1.0), 0.5, 0.0), ConfigError);
  EXPECT_THROW(integrate_numeric(scalar(1.0), 1.0, 1e-3), BlowupError);
  EXPECT_THROW(integrate_numeric(scalar(2e12), 1e-13, 1e-13), OverflowError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(integrate_numeric(asym, 0.1, 0.01), ConfigError);
}

TEST(Numeric, AgreesWithClosedFormOnNetworks) {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Eigen::MatrixXd y0 = initial_connectivity(generate(strong_params(seed)));
    const double t_star = blowup_time(y0).t_star;
    for (double frac : {0.5, 0.9}) {
      const double t = frac * t_star;
      const Eigen::MatrixXd exact = closed_form(y0, t);
      const Eigen::MatrixXd num = integrate_numeric(y0, t, default_step(y0));
      EXPECT_LT((num - exact).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, exact.cwiseAbs().maxCoeff()))
          << "seed " << seed << " frac " << frac;
    }
  }
}

TEST(FinalState, ExpectedMatrixGivesTwoFactions) {
  BlockParams p = strong_params(1);
  const SignedAdjacency f = final_state(expected_matrix(p) / p.n);
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < p.n; ++j) ASSERT_EQ(f.at(i, j), f.group(i) == f.group(j) ? 1 : -1);
  }
  const OutcomeRecord rec = measure_outcome(f, eigen_sym(expected_matrix(p)).leading_vector);
  EXPECT_NEAR(rec.r, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(rec.h, 0.5);
}

TEST(FinalState, PositiveMatrixGivesAllPositive) {
  const SignedAdjacency f = final_state(Eigen::MatrixXd::Constant(6, 6, 0.3));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) ASSERT_EQ(f.at(i, j), 1);
  }
}

TEST(FinalState, DegenerateLeadingEigenvalue) {
  EXPECT_THROW(final_state(Eigen::MatrixXd::Identity(4, 4)), NumericalError);
  EXPECT_THROW(final_state(-Eigen::MatrixXd::Identity(4, 4)), NumericalError);
}

TEST(FinalState, ScaleInvariantAndAlwaysBalanced) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    BlockParams p = strong_params(seed);
    p.p_in_pos = 0.55;
    p.p_out_pos = 0.45;
    const Eigen::MatrixXd y0 = initial_connectivity(generate(p));
    const SignedAdjacency f = final_state(y0);
    ASSERT_EQ(final_state(Eigen::MatrixXd(7.5 * y0)), f);
    ASSERT_TRUE(is_balanced(f).balanced);
    ASSERT_TRUE(testing::all_triads_balanced(f.to_dense()));
  }
}

// Near blow-up the dominant sign pattern of Y(t) is the predicted final state.
TEST(FinalState, MatchesNearBlowupSigns) {
  for (std::uint64_t seed : {4ULL, 5ULL}) {
    const Eigen::MatrixXd y0 = initial_connectivity(generate(strong_params(seed)));
    const double t_star = blowup_time(y0).t_star;
    const Eigen::MatrixXd y = closed_form(y0, (1.0 - 1e-8) * t_star);
    EXPECT_EQ(sign_matrix(y), final_state(y0));
  }
}

}  // namespace
}  // namespace signet
