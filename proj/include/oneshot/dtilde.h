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

// The quantile-restricted distortion functional.
//
//   D1(w)    = E_{P_X x Q_Y}[d(X,Y) 1{p_c(X,Y,U) <= w}]
//   D(w)     = D1(w) / w
//
// D1 is convex and piecewise linear in w, with one breakpoint per cumulative
// level mass of each source letter. It is stored exactly, so D is exactly
// s + c / w on every segment.

#ifndef ONESHOT_DTILDE_H_
#define ONESHOT_DTILDE_H_

#include <vector>

#include "oneshot/model.h"

namespace oneshot {

// Breakpoints closer than this are merged.
inline constexpr double kBreakpointMergeTolerance = 1e-14;

// Continuous piecewise-linear function on [0, 1]:
// value(w) = intercept_i + slope_i * w on [b_i, b_{i+1}].
class PiecewiseLinear {
 public:
  struct Segment {
    double intercept = 0.0;
    double slope = 0.0;
  };

  // breakpoints must start at 0, end at 1 and be strictly increasing;
  // segments.size() == breakpoints.size() - 1.
  PiecewiseLinear(std::vector<double> breakpoints,
                  std::vector<Segment> segments);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Segment>& segments() const { return segments_; }
  int num_segments() const { return static_cast<int>(segments_.size()); }

  // Index of the segment containing w; a shared endpoint maps to the left
  // segment.
  int SegmentIndex(double w) const;
  double Value(double w) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Segment> segments_;
};

PiecewiseLinear BuildDtilde1(const Problem& problem);

// D1 and D for one problem, with exact inversion. Immutable once built.
class DtildeFunction {
 public:
  explicit DtildeFunction(const Problem& problem);

  const PiecewiseLinear& dtilde1() const { return dtilde1_; }

  double Dtilde1(double w) const;
  // D(w) for w in [0, 1]; D(0) is the right limit E[min_{supp Q} d(X, y)].
  double Dtilde(double w) const;
  double AtZero() const;
  double AtOne() const { return Dtilde(1.0); }

  // inf{w in [0,1] : D(w) >= z} for z in [D(0), D(1)].
  double Inverse(double z) const;
  // -log Inverse(z); +inf when the inverse is 0.
  double Rtilde(double z) const;

 private:
  PiecewiseLinear dtilde1_;
};

double Dtilde(const Problem& problem, double w);
double DtildeInverse(const Problem& problem, double z);
double Rtilde(const Problem& problem, double z);

// D1(w) evaluated directly from the level profiles, without building the
// full piecewise representation.
double Dtilde1At(const Problem& problem, double w);

// W^w(y|x) = w^{-1} Q_Y(y) Pr_U{p_c(x,y,U) <= w}. Requires w in (0, 1].
Channel TestChannel(const Problem& problem, double w);

}  // namespace oneshot

#endif  // ONESHOT_DTILDE_H_
