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

#include "oneshot/dtilde.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fmt/format.h"
#include "oneshot/pairwise.h"

namespace oneshot {

namespace {

// Slack accepted on the range check of Inverse().
constexpr double kRangeSlack = 1e-12;

// Per-letter D1 contribution on the level-j interval [F_j, F_{j+1}]:
//   sum_{i<j} d_i q_i + d_j (w - F_j).
PiecewiseLinear::Segment LetterSegment(const DistortionProfile& profile,
                                       int j) {
  std::vector<double> below(j);
  for (int i = 0; i < j; ++i) below[i] = profile.levels[i] * profile.masses[i];
  return {PairwiseSum(below) - profile.levels[j] * profile.cumulative[j],
          profile.levels[j]};
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints,
                                 std::vector<Segment> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 ||
      breakpoints_.back() != 1.0) {
    throw std::invalid_argument("breakpoints must span [0, 1]");
  }
  if (segments_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("one segment per breakpoint interval");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
}

int PiecewiseLinear::SegmentIndex(double w) const {
  const auto it =
      std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), w);
  if (it == breakpoints_.end()) return num_segments() - 1;
  return static_cast<int>(it - breakpoints_.begin()) - 1;
}

double PiecewiseLinear::Value(double w) const {
  const Segment& s = segments_[SegmentIndex(w)];
  return s.intercept + s.slope * w;
}

PiecewiseLinear BuildDtilde1(const Problem& problem) {
  std::vector<DistortionProfile> profiles;
  std::vector<int> letters;
  std::vector<double> raw = {0.0, 1.0};
  for (int x = 0; x < problem.x_size(); ++x) {
    if (problem.p_x()[x] <= 0.0) continue;
    letters.push_back(x);
    profiles.push_back(Profile(problem, x));
    for (double f : profiles.back().cumulative) raw.push_back(f);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<double> breakpoints = {0.0};
  for (double b : raw) {
    if (b <= 0.0) continue;
    if (b >= 1.0 - kBreakpointMergeTolerance) break;
    if (b - breakpoints.back() > kBreakpointMergeTolerance) {
      breakpoints.push_back(b);
    }
  }
  breakpoints.push_back(1.0);

  std::vector<PiecewiseLinear::Segment> segments;
  segments.reserve(breakpoints.size() - 1);
  std::vector<double> intercepts(letters.size());
  std::vector<double> slopes(letters.size());
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double mid = 0.5 * (breakpoints[i] + breakpoints[i + 1]);
    for (std::size_t k = 0; k < letters.size(); ++k) {
      const double p = problem.p_x()[letters[k]];
      const PiecewiseLinear::Segment s =
          LetterSegment(profiles[k], profiles[k].LevelIndexFor(mid));
      intercepts[k] = p * s.intercept;
      slopes[k] = p * s.slope;
    }
    segments.push_back({PairwiseSum(intercepts), PairwiseSum(slopes)});
  }
  // The first segment sits in every letter's lowest level, so D1(0) = 0.
  segments.front().intercept = 0.0;
  return PiecewiseLinear(std::move(breakpoints), std::move(segments));
}

DtildeFunction::DtildeFunction(const Problem& problem)
    : dtilde1_(BuildDtilde1(problem)) {}

double DtildeFunction::Dtilde1(double w) const {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside [0, 1]", w));
  }
  return dtilde1_.Value(w);
}

double DtildeFunction::AtZero() const {
  return dtilde1_.segments().front().slope;
}

double DtildeFunction::Dtilde(double w) const {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside [0, 1]", w));
  }
  if (w == 0.0) return AtZero();
  const PiecewiseLinear::Segment& s =
      dtilde1_.segments()[dtilde1_.SegmentIndex(w)];
  return s.slope + s.intercept / w;
}

double DtildeFunction::Inverse(double z) const {
  const double lo = AtZero();
  const double hi = AtOne();
  if (!(z >= lo - kRangeSlack && z <= hi + kRangeSlack)) {
    throw std::invalid_argument(
        fmt::format("z = {} outside [{}, {}]", z, lo, hi));
  }
  if (z <= lo) return 0.0;
  const std::vector<double>& b = dtilde1_.breakpoints();
  // First breakpoint with D(b) >= z; D is nondecreasing so this is a
  // partition point.
  int lo_idx = 1;
  int hi_idx = static_cast<int>(b.size()) - 1;
  while (lo_idx < hi_idx) {
    const int mid = (lo_idx + hi_idx) / 2;
    if (Dtilde(b[mid]) >= z) {
      hi_idx = mid;
    } else {
      lo_idx = mid + 1;
    }
  }
  const int seg = lo_idx - 1;
  const PiecewiseLinear::Segment& s = dtilde1_.segments()[seg];
  if (Dtilde(b[seg]) >= z) return b[seg];
  // Solve slope + intercept / w = z on the segment; intercept < 0 here.
  const double w = s.intercept / (z - s.slope);
  return std::clamp(w, b[seg], b[seg + 1]);
}

double DtildeFunction::Rtilde(double z) const {
  const double w = Inverse(z);
  if (w <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(w);
}

double Dtilde(const Problem& problem, double w) {
  return DtildeFunction(problem).Dtilde(w);
}

double DtildeInverse(const Problem& problem, double z) {
  return DtildeFunction(problem).Inverse(z);
}

double Rtilde(const Problem& problem, double z) {
  return DtildeFunction(problem).Rtilde(z);
}

double Dtilde1At(const Problem& problem, double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside [0, 1]", w));
  }
  std::vector<double> terms;
  terms.reserve(problem.x_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    if (problem.p_x()[x] <= 0.0) continue;
    const DistortionProfile profile = Profile(problem, x);
    const PiecewiseLinear::Segment s =
        LetterSegment(profile, profile.LevelIndexFor(w));
    terms.push_back(problem.p_x()[x] * (s.intercept + s.slope * w));
  }
  return PairwiseSum(terms);
}

Channel TestChannel(const Problem& problem, double w) {
  if (!(w > 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside (0, 1]", w));
  }
  Matrix m(problem.x_size(), problem.y_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    const DistortionProfile profile = Profile(problem, x);
    for (int y = 0; y < problem.y_size(); ++y) {
      const double q = problem.q_y()[y];
      if (q <= 0.0) continue;
      const int j = profile.LevelIndexOf(problem.d(x, y));
      const double included =
          std::clamp((w - profile.cumulative[j]) / profile.masses[j], 0.0, 1.0);
      m(x, y) = q * included / w;
    }
  }
  return Channel(std::move(m), 1e-12);
}

}  // namespace oneshot
