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

// Expected distortion of an i.i.d. random codebook and the bounds derived
// from it.
//
// With M codewords drawn from Q_Y, the minimum of the M pairwise-correct
// probabilities is distributed as the minimum of M uniforms, which gives
//
//   E[min_i d(X, Y_i)] = int_0^1 D(w) G_M'(w) dw,
//   G_M(w) = -(1 - w)^{M-1} ((M - 1) w + 1).
//
// Since D1 is piecewise linear the integral is evaluated exactly.

#ifndef ONESHOT_RANDOM_CODING_H_
#define ONESHOT_RANDOM_CODING_H_

#include <cstdint>
#include <vector>

#include "oneshot/dtilde.h"
#include "oneshot/model.h"

namespace oneshot {

// G_M(w). For M = 1 this is the constant -1.
double GM(double w, std::int64_t m);

// Density M (1 - w)^{M-1} and distribution 1 - (1 - w)^M of the minimum of
// M independent uniforms on [0, 1].
double MinUniformPdf(double w, std::int64_t m);
double MinUniformCdf(double w, std::int64_t m);

// Codebook size used for a rate R: floor(e^R) + 1.
std::int64_t CodewordsForRate(double rate);

struct RandomCodingResult {
  std::int64_t m = 0;
  double exact_distortion = 0.0;
  // Contribution of each D1 segment to the integral. Empty for M = 1.
  std::vector<double> per_segment_contributions;
};

// M = 1 returns the single-draw mean E_{P_X x Q_Y}[d] = D(1).
RandomCodingResult ExactExpectedDistortion(const DtildeFunction& dtilde,
                                           std::int64_t m);
RandomCodingResult ExactExpectedDistortion(const Problem& problem,
                                           std::int64_t m);

// f(t) = exp(-e^t) (e^t + 1), strictly decreasing from 1 to 0.
double FOf(double lambda);

// Bracket [lower, upper] for f^{-1}(x) - log(-log x), x in (0, 1).
struct FInverseRange {
  double lower = 0.0;
  double upper = 0.0;
};
FInverseRange FInverseBracket(double x);

// Solves f(lambda) = x for x in (0, 1).
double FInverse(double x);

// g(x) = log log x + log(2/3) + log(1 + sqrt(1 + 9 / (2 log x))), x > 1.
// Upper-bounds f^{-1}(1/x).
double GOf(double x);

struct AchievabilityBound {
  double lambda = 0.0;
  double w = 0.0;           // e^{-(R - lambda)}
  double bound = 0.0;       // D(w) + (D(1) - D(w)) f(lambda)
  double dmax_bound = 0.0;  // D(w) + d_max f(lambda)
};

// Upper bound on the random-coding distortion at rate R for any
// lambda < R.
AchievabilityBound RandomCodingBound(const DtildeFunction& dtilde, double d_max,
                                     double rate, double lambda);
AchievabilityBound RandomCodingBound(const Problem& problem, double rate,
                                     double lambda);

// Smallest `bound` over lambda_k = R - step * k, k = 1..count.
AchievabilityBound BestRandomCodingBound(const DtildeFunction& dtilde,
                                         double d_max, double rate,
                                         int count = 400, double step = 0.025);

struct RateForDistortion {
  double d_req = 0.0;
  // min_z Rtilde(z) + f^{-1}((d_req - z) / (D(1) - z)) and its minimizer.
  // `rate` is clipped at 0; `raw_rate` is the minimum itself.
  double rate = 0.0;
  double raw_rate = 0.0;
  double z = 0.0;
  double lambda = 0.0;
  // The same minimization with g((D(1) - z) / (d_req - z)) in place of
  // f^{-1}, also clipped at 0.
  double rate_g = 0.0;
  double raw_rate_g = 0.0;
  double z_g = 0.0;
};

// Requires d_req in (D(0), D(1)). The minimization scans D at every
// breakpoint plus a uniform grid of z and refines the best cell by golden
// section.
RateForDistortion RateForDistortionLevel(const Problem& problem, double d_req);

}  // namespace oneshot

#endif  // ONESHOT_RANDOM_CODING_H_
