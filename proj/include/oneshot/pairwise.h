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

// Pairwise-correct probability p_c(x, y, u): the Q_Y-probability that a fresh
// reproduction letter beats y for source letter x, with ties counted at rate u.
//
// For fixed x the map y -> [Q{d < d(x,y)}, Q{d <= d(x,y)}] tiles [0, 1] in
// order of increasing distortion, so every w in [0, 1] names a distortion
// level. These functions expose that correspondence.

#ifndef ONESHOT_PAIRWISE_H_
#define ONESHOT_PAIRWISE_H_

#include <vector>

#include "oneshot/model.h"

namespace oneshot {

// Distinct distortion levels of row x restricted to supp(Q_Y).
struct DistortionProfile {
  std::vector<double> levels;      // strictly increasing
  std::vector<double> masses;      // Q_Y{d(x,Y) = levels[j]} > 0
  std::vector<double> cumulative;  // size levels.size() + 1, starts at 0

  int size() const { return static_cast<int>(levels.size()); }
  // Smallest j with cumulative[j + 1] >= u; the last level if u overshoots.
  int LevelIndexFor(double u) const;
  // Index of `value` in levels, or -1.
  int LevelIndexOf(double value) const;
  // Q_Y{d(x,Y) < value}.
  double MassBelow(double value) const;
};

DistortionProfile Profile(const Problem& problem, int x);

// Q{d(x,Y) < d(x,y)} + u * Q{d(x,Y) = d(x,y)}. Requires u in [0, 1].
double PairwiseCorrect(const Problem& problem, int x, int y, double u);

// Pr_U{p_c(x, y, U) <= w}. When y has no tied mass the probability is the
// step 1{Q{d < d(x,y)} <= w}.
double ProbPairwiseCorrectAtMost(const Problem& problem, int x, int y,
                                 double w);

struct Level {
  int y = 0;
  double tau = 0.0;
};

// Returns (y, tau) with PairwiseCorrect(x, y, tau) == w and Q_Y(y) > 0.
// Ties between letters resolve to the smallest index. Requires w in [0, 1].
Level FindLevel(const Problem& problem, int x, double w);

// The distortion level d~(x, u): levels[j] for the j whose interval
// [F_{j-1}, F_j] contains u, taking the lower level at a shared endpoint.
double DtildeOfU(const Problem& problem, int x, double u);
double DtildeOfU(const DistortionProfile& profile, double u);

// Pr_{Y ~ Q_Y, U}{p_c(x, Y, U) <= w}, in closed form.
double PcCdf(const Problem& problem, int x, double w);

}  // namespace oneshot

#endif  // ONESHOT_PAIRWISE_H_
