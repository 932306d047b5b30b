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

// Excess-distortion specialization: the distortion is replaced by the
// indicator 1{d(x,y) > d_th}, so D becomes an excess probability.

#ifndef ONESHOT_EXCESS_H_
#define ONESHOT_EXCESS_H_

#include <cstdint>
#include <vector>

#include "oneshot/model.h"

namespace oneshot {

// The problem with d replaced by 1{d > d_th}. Requires d_th >= 0.
Problem ExcessProblem(const Problem& problem, double d_th);

struct ExcessDtilde {
  double unnormalized = 0.0;  // D1(e^{-R}) of the indicator problem
  double normalized = 0.0;    // D(e^{-R}) = unnormalized * e^R
};

// Requires R >= 0.
ExcessDtilde ExcessDtildeAt(const Problem& problem, double rate, double d_th);

// Rtilde of the indicator problem at excess probability delta. Returns 0
// when delta reaches the unconstrained excess probability and +inf at the
// floor D(0). Throws std::invalid_argument below the floor.
double ExcessRate(const Problem& problem, double delta, double d_th);

// sum_y max over {x : joint(x,y) > 0} of joint(x,y) / P_X(x).
double MFunctional(const Matrix& joint);

struct DInfIdentityCheck {
  double lhs = 0.0;  // D_inf(joint || P_X x Q*) at Q*(y) = colmax(y) / M
  double rhs = 0.0;  // log M(joint)
  double gap = 0.0;
  std::vector<double> q_star;
  // Smallest D_inf over randomly drawn Q, minus rhs; never below -1e-12.
  double min_random_excess = 0.0;
  bool holds() const { return gap <= 1e-10 && min_random_excess >= -1e-12; }
};

DInfIdentityCheck DInfIdentity(const Matrix& joint, int random_trials = 20,
                               std::uint64_t seed = 0x1e44aULL);

struct BoundGap {
  double x = 0.0;
  double ours = 0.0;    // g(x)
  double theirs = 0.0;  // log log x
  double diff = 0.0;
};

// Requires x > 1.
BoundGap BoundGapComparison(double x);

struct BoundGapSweep {
  std::vector<BoundGap> points;
  // Smallest sampled x from which every later sample has diff in (0, 1).
  double x0 = 0.0;
  bool all_in_unit_interval = false;
};

// Logarithmically spaced samples over [lo, hi].
BoundGapSweep SweepBoundGap(double lo, double hi, int samples);

}  // namespace oneshot

#endif  // ONESHOT_EXCESS_H_
