// Copyright 2026 The oneshot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oneshot/excess.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oneshot/dtilde.h"
#include "oneshot/variational.h"
#include "test_util.h"

namespace oneshot {
namespace {

using ::oneshot::testing::BinaryHamming;
using ::oneshot::testing::RandomProblem;
using ::oneshot::testing::RandomStochastic;

TEST(ExcessProblemTest, Thresholding) {
  EXPECT_EQ(ExcessProblem(BinaryHamming(), 0.0).d(), BinaryHamming().d());
  const Problem p({0.5, 0.5}, {0.5, 0.5}, Matrix::FromRows({{0, 2}, {3, 1}}));
  EXPECT_EQ(ExcessProblem(p, 1.5).d(), Matrix::FromRows({{0, 1}, {1, 0}}));
  EXPECT_EQ(ExcessProblem(p, 3.0).d(), Matrix(2, 2));
  EXPECT_THROW(ExcessProblem(p, -1.0), std::invalid_argument);
}

TEST(ExcessDtildeTest, HandValues) {
  const ExcessDtilde e =
      ExcessDtildeAt(BinaryHamming(), std::log(4.0 / 3.0), 0.0);
  EXPECT_NEAR(e.unnormalized, 0.25, 1e-15);
  EXPECT_NEAR(e.normalized, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(ExcessDtildeAt(BinaryHamming(), 0.0, 0.0).unnormalized, 0.5,
              1e-15);
  for (double r : {0.0, 0.5, 3.0}) {
    EXPECT_EQ(ExcessDtildeAt(BinaryHamming(), r, 1.0).unnormalized, 0.0);
  }
}

TEST(ExcessDtildeTest, ZeroRateIsTheExcessProbability) {
  std::mt19937_64 gen(167);
  for (int trial = 0; trial < 30; ++trial) {
    const Problem p = RandomProblem(gen);
    const double d_th = UniformUnit(gen);
    double expected = 0.0;
    for (int x = 0; x < p.x_size(); ++x) {
      for (int y = 0; y < p.y_size(); ++y) {
        if (p.d(x, y) > d_th) expected += p.p_x()[x] * p.q_y()[y];
      }
    }
    EXPECT_NEAR(ExcessDtildeAt(p, 0.0, d_th).normalized, expected, 1e-12);
  }
}

TEST(ExcessRateTest, HandValues) {
  EXPECT_NEAR(ExcessRate(BinaryHamming(), 1.0 / 3.0, 0.0), std::log(4.0 / 3.0),
              1e-12);
  EXPECT_EQ(ExcessRate(BinaryHamming(), 0.5, 0.0), 0.0);
  EXPECT_EQ(ExcessRate(BinaryHamming(), 0.0, 0.0), INFINITY);
  const Problem floor({1.0}, {0.5, 0.5}, Matrix::FromRows({{1, 1}}));
  EXPECT_THROW(ExcessRate(floor, 0.5, 0.5), std::invalid_argument);
}

TEST(ExcessRateTest, InfFormAtTheReturnedRateMeetsDelta) {
  std::mt19937_64 gen(173);
  for (int trial = 0; trial < 30; ++trial) {
    const Problem p = RandomProblem(gen);
    const double d_th = 0.3;
    const DtildeFunction f(ExcessProblem(p, d_th));
    if (!(f.AtOne() > f.AtZero() + 1e-6)) continue;
    const double delta =
        f.AtZero() + (f.AtOne() - f.AtZero()) * (0.1 + 0.8 * UniformUnit(gen));
    const double rate = ExcessRate(p, delta, d_th);
    EXPECT_NEAR(InfFormValue(ExcessProblem(p, d_th), rate).value, delta, 1e-9);
  }
}

TEST(MFunctionalTest, HandValues) {
  EXPECT_NEAR(MFunctional(Matrix::FromRows({{0.5, 0.0}, {0.0, 0.5}})), 2.0,
              1e-15);
  EXPECT_NEAR(MFunctional(Matrix::FromRows({{0.15, 0.35}, {0.15, 0.35}})), 1.0,
              1e-15);
  EXPECT_NEAR(MFunctional(Matrix::FromRows({{0.45, 0.05}, {0.05, 0.45}})), 1.8,
              1e-15);
}

TEST(DInfIdentityTest, HandValues) {
  const DInfIdentityCheck identity =
      DInfIdentity(Matrix::FromRows({{0.5, 0.0}, {0.0, 0.5}}));
  EXPECT_NEAR(identity.lhs, std::log(2.0), 1e-15);
  EXPECT_NEAR(identity.rhs, std::log(2.0), 1e-15);
  EXPECT_EQ(identity.q_star, (std::vector<double>{0.5, 0.5}));
  EXPECT_TRUE(identity.holds());
  const DInfIdentityCheck independent =
      DInfIdentity(Matrix::FromRows({{0.12, 0.28}, {0.18, 0.42}}));
  EXPECT_NEAR(independent.lhs, 0.0, 1e-15);
  EXPECT_NEAR(independent.rhs, 0.0, 1e-15);
  EXPECT_TRUE(independent.holds());
}

TEST(DInfIdentityTest, RandomJoints) {
  std::mt19937_64 gen(179);
  for (int trial = 0; trial < 50; ++trial) {
    const int nx = 1 + trial % 5;
    const int ny = 2 + trial % 4;
    const std::vector<double> p = RandomSimplexPoint(gen, nx);
    const Matrix w = RandomStochastic(gen, nx, ny);
    const Matrix joint = JointDistribution(p, Channel(w));
    const DInfIdentityCheck check = DInfIdentity(joint);
    EXPECT_LE(check.gap, 1e-10);
    EXPECT_TRUE(check.holds()) << check.min_random_excess;
  }
}

TEST(BoundGapTest, Values) {
  const BoundGap at = BoundGapComparison(std::exp(std::exp(1.0)));
  EXPECT_NEAR(at.theirs, 1.0, 1e-15);
  EXPECT_NEAR(at.diff, 0.5613504542, 1e-9);
  EXPECT_NEAR(BoundGapComparison(1e300).diff, std::log(4.0 / 3.0), 1e-2);
  EXPECT_THROW(BoundGapComparison(1.0), std::invalid_argument);
}

TEST(BoundGapTest, SweepStaysBelowOneNat) {
  const BoundGapSweep sweep = SweepBoundGap(2.0, 1e6, 400);
  ASSERT_EQ(sweep.points.size(), 400u);
  EXPECT_EQ(sweep.points.back().x, 1e6);
  EXPECT_TRUE(sweep.all_in_unit_interval);
  EXPECT_EQ(sweep.x0, 2.0);
  for (const BoundGap& p : sweep.points) {
    EXPECT_GT(p.diff, 0.0);
    EXPECT_LT(p.diff, 1.0);
  }
}

}  // namespace
}  // namespace oneshot
