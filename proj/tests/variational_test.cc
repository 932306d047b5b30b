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

#include "oneshot/variational.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "oneshot/dtilde.h"
#include "test_util.h"

namespace oneshot {
namespace {

using ::oneshot::testing::BinaryHamming;
using ::oneshot::testing::ConstantProblem;
using ::oneshot::testing::RandomProblem;
using ::oneshot::testing::RandomStochastic;

// A w that avoids every breakpoint of D1 by at least 1e-6.
double InteriorW(const DtildeFunction& f, std::mt19937_64& gen) {
  while (true) {
    const double w = 0.02 + 0.97 * UniformUnit(gen);
    bool clear = true;
    for (double b : f.dtilde1().breakpoints()) {
      clear = clear && std::abs(b - w) > 1e-6;
    }
    if (clear) return w;
  }
}

TEST(NeymanPearsonBetaTest, Extremes) {
  const Problem p = BinaryHamming();
  const WeightedMeasure mu = DistortionMeasure(p);
  const Matrix product = ProductMatrix(p.p_x(), p.q_y());
  const NPResult none = NeymanPearsonBeta(0.0, product, mu);
  EXPECT_EQ(none.beta, 0.0);
  for (double a : none.test.accept.data()) EXPECT_EQ(a, 0.0);
  EXPECT_NEAR(NeymanPearsonBeta(1.0, product, mu).beta, mu.total_mass, 1e-15);
  EXPECT_THROW(NeymanPearsonBeta(1.5, product, mu), std::invalid_argument);
}

TEST(NeymanPearsonBetaTest, RandomizesTheBoundaryGroup) {
  const Problem p = BinaryHamming();
  const NPResult r = NeymanPearsonBeta(
      0.75, ProductMatrix(std::vector<double>{0.5, 0.5}, p.q_y()),
      DistortionMeasure(p));
  EXPECT_NEAR(r.beta, 0.25, 1e-15);
  EXPECT_NEAR(r.test.achieved_alpha, 0.75, 1e-15);
  EXPECT_EQ(r.test.accept(0, 0), 1.0);
  EXPECT_NEAR(r.test.accept(0, 1), 0.5, 1e-15);
  EXPECT_EQ(r.test.threshold, 1.0);
}

// Brute-force check: beta is the minimum over deterministic tests that
// accept a prefix of one random ordering plus a fraction of the next entry.
TEST(NeymanPearsonBetaTest, NoOrderingDoesBetter) {
  std::mt19937_64 gen(139);
  for (int trial = 0; trial < 200; ++trial) {
    const Problem p = RandomProblem(gen, {.max_x = 3, .max_y = 3});
    const Matrix product =
        ProductMatrix(RandomSimplexPoint(gen, p.x_size()), p.q_y());
    const WeightedMeasure mu = DistortionMeasure(p);
    const double alpha = UniformUnit(gen);
    const double beta = NeymanPearsonBeta(alpha, product, mu).beta;
    std::vector<int> order(product.data().size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen);
    double reached = 0.0;
    double cost = 0.0;
    for (int i : order) {
      const double pv = product.data()[i];
      const double take = pv > 0 ? std::min(1.0, (alpha - reached) / pv) : 0;
      if (take <= 0) break;
      reached += take * pv;
      cost += take * mu.weights.data()[i];
    }
    EXPECT_LE(beta, cost + 1e-12);
  }
}

TEST(WitnessQxTest, HandValues) {
  const Witness w = WitnessQx(BinaryHamming(), 0.75);
  EXPECT_EQ(w.level_letters, (std::vector<int>{1, 0}));
  EXPECT_DOUBLE_EQ(w.lambda, 1.0);
  EXPECT_EQ(w.q_x, (std::vector<double>{0.5, 0.5}));
  const Problem c({0.2, 0.8}, {0.5, 0.5},
                  Matrix::FromRows({{0.3, 0.3}, {0.3, 0.3}}));
  const Witness cw = WitnessQx(c, 0.4);
  EXPECT_DOUBLE_EQ(cw.lambda, 0.3);
  EXPECT_NEAR(cw.q_x[0], 0.2, 1e-15);
  EXPECT_NEAR(cw.q_x[1], 0.8, 1e-15);
}

TEST(SupFormValueTest, HandValues) {
  const SupFormResult r = SupFormValue(BinaryHamming(), 0.75);
  EXPECT_NEAR(r.value, 0.25, 1e-15);
  EXPECT_NEAR(r.normalized, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(SupFormValue(BinaryHamming(), 1.0).value, 0.5, 1e-15);
}

TEST(SupFormValueTest, EqualsDtilde1OnRandomProblems) {
  std::mt19937_64 gen(149);
  for (int trial = 0; trial < 50; ++trial) {
    const Problem p = RandomProblem(
        gen, {.integer_distortion = trial % 2 == 0, .zero_probability = 0.1});
    const DtildeFunction f(p);
    for (int k = 0; k < 5; ++k) {
      const double w = InteriorW(f, gen);
      const SupFormResult r = SupFormValue(p, w);
      EXPECT_NEAR(r.value, f.Dtilde1(w), 1e-10)
          << "trial " << trial << " w " << w << "\n"
          << EmitProblemJson(p);
      EXPECT_NEAR(r.normalized, f.Dtilde(w), 1e-9);
      EXPECT_TRUE(r.random_dominated) << r.max_random_beta << " " << r.value;
    }
  }
}

TEST(DInfTest, Values) {
  const Matrix a = Matrix::FromRows({{0.25, 0.25}, {0.25, 0.25}});
  EXPECT_EQ(DInf(a, a), 0.0);
  const Matrix identity = Matrix::FromRows({{0.5, 0.0}, {0.0, 0.5}});
  EXPECT_NEAR(DInf(identity, a), std::log(2.0), 1e-15);
  const Matrix off = Matrix::FromRows({{0.5, 0.5}, {0.0, 0.0}});
  const Matrix on = Matrix::FromRows({{0.5, 0.0}, {0.5, 0.0}});
  EXPECT_EQ(DInf(off, on), INFINITY);
}

TEST(InfFormValueTest, HandValues) {
  const InfFormResult r = InfFormValue(BinaryHamming(), std::log(4.0 / 3.0));
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.channel(0, 0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.channel(0, 1), 1.0 / 3.0, 1e-15);
  const InfFormResult zero = InfFormValue(BinaryHamming(), 0.0);
  EXPECT_NEAR(zero.value, 0.5, 1e-15);
  EXPECT_NEAR(zero.channel(1, 0), 0.5, 1e-15);
  EXPECT_NEAR(InfFormValue(BinaryHamming(), 5.0).value, 0.0, 1e-15);
}

TEST(InfFormValueTest, EqualsDtildeAndMeetsTheConstraint) {
  std::mt19937_64 gen(151);
  for (int trial = 0; trial < 50; ++trial) {
    const Problem p = RandomProblem(
        gen, {.integer_distortion = trial % 2 == 0, .zero_probability = 0.1});
    const DtildeFunction f(p);
    for (int k = 0; k < 5; ++k) {
      const double w = InteriorW(f, gen);
      const InfFormResult r = InfFormValue(p, -std::log(w));
      EXPECT_NEAR(r.value, f.Dtilde(w), 1e-9);
      const Matrix joint = JointDistribution(p.p_x(), r.channel);
      EXPECT_LE(DInf(joint, ProductMatrix(p.p_x(), p.q_y())),
                -std::log(w) + 1e-12);
    }
  }
}

// Convexity of Q -> D(w, Q) at segment midpoints.
TEST(ConvexityTest, MidpointConvexInThePrior) {
  std::mt19937_64 gen(157);
  for (int trial = 0; trial < 200; ++trial) {
    const Problem p = RandomProblem(gen);
    const std::vector<double> a = RandomSimplexPoint(gen, p.y_size());
    const std::vector<double> b = RandomSimplexPoint(gen, p.y_size());
    std::vector<double> mid(a.size());
    for (std::size_t y = 0; y < a.size(); ++y) mid[y] = 0.5 * (a[y] + b[y]);
    const double w = 0.05 + 0.9 * UniformUnit(gen);
    const double left = Dtilde(p.WithPrior(a), w);
    const double right = Dtilde(p.WithPrior(b), w);
    EXPECT_LE(Dtilde(p.WithPrior(mid), w), 0.5 * (left + right) + 1e-10);
  }
}

TEST(InfoSpectrumInequalityTest, BinarySymmetricChannel) {
  const Channel bsc(Matrix::FromRows({{0.9, 0.1}, {0.1, 0.9}}));
  const double rate = std::log(1.9) + 0.2;
  const InfoSpectrumCheck s =
      InfoSpectrumInequality(BinaryHamming(), bsc, rate, 0.2);
  EXPECT_FALSE(s.vacuous);
  EXPECT_NEAR(s.event_probability, 1.0, 1e-15);
  EXPECT_NEAR(s.lambda, 0.0, 1e-15);
  EXPECT_NEAR(s.lhs, 0.05, 1e-12);
  EXPECT_NEAR(s.rhs, 0.1, 1e-15);
  EXPECT_TRUE(s.holds);
}

TEST(InfoSpectrumInequalityTest, EmptyEventIsVacuous) {
  const Channel bsc(Matrix::FromRows({{0.9, 0.1}, {0.1, 0.9}}));
  const InfoSpectrumCheck s =
      InfoSpectrumInequality(BinaryHamming(), bsc, std::log(0.1), 0.0);
  EXPECT_TRUE(s.vacuous);
  EXPECT_TRUE(s.holds);
}

// The inequality fails on this instance. The rescaled channel
// e^lambda W 1{i <= R - delta} used to derive it sums to one over (x, y)
// but not per source letter, so it is not a channel. Recomputed
// independently: event 0.82346, w 0.61005, lhs 0.39086, rhs 0.031507.
TEST(InfoSpectrumInequalityTest, KnownCounterexample) {
  const Problem p({0.18389330634501685, 0.81610669365498323}, {0.5, 0.5},
                  Matrix::FromRows({{3, 0}, {0, 3}}));
  const Channel w(
      Matrix::FromRows({{0.04000033585689966, 0.95999966414310034},
                        {0.99841625926621169, 0.0015837407337883662}}));
  const InfoSpectrumCheck s =
      InfoSpectrumInequality(p, w, 1.8364304676173926, 1.536453086548202);
  EXPECT_FALSE(s.vacuous);
  EXPECT_NEAR(s.event_probability, 0.8234624877, 1e-9);
  EXPECT_NEAR(s.w, 0.6100498134, 1e-9);
  EXPECT_NEAR(s.lhs, 0.3908647767, 1e-9);
  EXPECT_NEAR(s.rhs, 0.0315070652, 1e-9);
  EXPECT_FALSE(s.holds);
}

TEST(InfoSpectrumInequalityTest, HoldsWhenTheEventIsCertain) {
  std::mt19937_64 gen(163);
  for (int trial = 0; trial < 100; ++trial) {
    const Problem p = RandomProblem(gen, {.max_x = 4, .max_y = 4});
    const Channel w(RandomStochastic(gen, p.x_size(), p.y_size()));
    // Above the largest information density the event has probability one
    // and lambda = 0, so the inequality reduces to the inf form.
    const InfoSpectrumCheck s = InfoSpectrumInequality(p, w, 40.0, 0.0);
    EXPECT_NEAR(s.lambda, 0.0, 1e-12);
    EXPECT_TRUE(s.holds);
  }
}

}  // namespace
}  // namespace oneshot
