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

// Two alternative characterizations of D(w, Q_Y):
//
//  * hypothesis testing: sup over Q_X of the Neyman-Pearson beta_w between
//    Q_X x Q_Y and the (unnormalized) measure P_X x Q_Y x d. The supremum
//    equals D1(w) = w D(w), attained at an explicit witness Q_X.
//  * channel minimization: the least E[d] over channels W with
//    D_inf(P_X x W || P_X x Q_Y) <= -log w, i.e. W(y|x) <= Q_Y(y) / w.
//
// Also the max-divergence itself and an information-spectrum inequality
// linking D to an arbitrary channel.

#ifndef ONESHOT_VARIATIONAL_H_
#define ONESHOT_VARIATIONAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "oneshot/model.h"

namespace oneshot {

// Nonnegative, not necessarily normalized, measure over X x Y.
struct WeightedMeasure {
  Matrix weights;
  double total_mass = 0.0;

  // Throws ValidationError on negative or non-finite entries.
  static WeightedMeasure FromMatrix(Matrix weights);
};

// P_X(x) Q_Y(y) d(x, y).
WeightedMeasure DistortionMeasure(const Problem& problem);

// q_x(x) q_y(y).
Matrix ProductMatrix(std::span<const double> q_x, std::span<const double> q_y);

struct NPTest {
  Matrix accept;           // acceptance probability per (x, y)
  double threshold = 0.0;  // likelihood ratio mu / P at the randomized group
  double achieved_alpha = 0.0;
};

struct NPResult {
  double beta = 0.0;
  NPTest test;
};

// min mu(test) over randomized tests with P(test) >= alpha. Entries are
// accepted in increasing order of mu / P; entries with P = 0 < mu rank last
// and entries with P = mu = 0 are never accepted. Ratios within a relative
// 1e-12 of each other form one tie group, randomized at a common rate.
// Throws std::invalid_argument if alpha is outside [0, total P mass].
NPResult NeymanPearsonBeta(double alpha, const Matrix& p,
                           const WeightedMeasure& mu);

struct Witness {
  std::vector<double> q_x;         // lambda^{-1} P_X(x) d(x, y_x)
  double lambda = 0.0;             // sum_x P_X(x) d(x, y_x)
  std::vector<int> level_letters;  // y_x per source letter
  bool degenerate = false;         // lambda == 0: D1(w) = 0, any Q_X attains it
};

// Requires w in (0, 1].
Witness WitnessQx(const Problem& problem, double w);

struct SupFormResult {
  double value = 0.0;       // beta_w at the witness; equals D1(w)
  double normalized = 0.0;  // value / w; equals D(w)
  Witness witness;
  // Largest beta_w over randomly drawn Q_X; never above `value`.
  double max_random_beta = 0.0;
  bool random_dominated = true;
};

SupFormResult SupFormValue(const Problem& problem, double w,
                           int random_trials = 20,
                           std::uint64_t seed = 0xbe7aULL);

// log max over entries with denominator > 0 of numerator / denominator;
// +inf if numerator > 0 where denominator = 0; 0/0 entries are ignored.
// Returns -inf when every entry is 0/0.
double DInf(const Matrix& numerator, const Matrix& denominator);

struct InfFormResult {
  double value = 0.0;
  Channel channel;
};

// Fills capacity e^R Q_Y(y) per source letter in increasing order of
// distortion, splitting tied letters in proportion to Q_Y. Requires R >= 0.
InfFormResult InfFormValue(const Problem& problem, double rate);

struct InfoSpectrumCheck {
  double event_probability = 0.0;  // P[i(X;Y) <= R - delta]
  double lambda = 0.0;             // -log event_probability
  double w = 0.0;                  // e^{-(R - delta) - lambda}
  double lhs = 0.0;                // D(w, Q_Y), Q_Y the output marginal
  double rhs = 0.0;                // E_{P_X x W}[d] e^lambda
  bool vacuous = false;            // event has probability 0, or w > 1
  bool holds = true;               // vacuous || lhs <= rhs + 1e-10
};

InfoSpectrumCheck InfoSpectrumInequality(const Problem& problem,
                                         const Channel& channel, double rate,
                                         double delta);

}  // namespace oneshot

#endif  // ONESHOT_VARIATIONAL_H_
