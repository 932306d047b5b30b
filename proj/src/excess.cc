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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fmt/format.h"
#include "oneshot/dtilde.h"
#include "oneshot/random.h"
#include "oneshot/random_coding.h"
#include "oneshot/variational.h"

namespace oneshot {

namespace {

std::vector<double> RowSums(const Matrix& m) {
  std::vector<double> sums(m.rows());
  for (int r = 0; r < m.rows(); ++r) sums[r] = PairwiseSum(m.row(r));
  return sums;
}

std::vector<double> ColumnMaxima(const Matrix& joint,
                                 const std::vector<double>& p_x) {
  std::vector<double> maxima(joint.cols(), 0.0);
  for (int x = 0; x < joint.rows(); ++x) {
    if (p_x[x] <= 0.0) continue;
    for (int y = 0; y < joint.cols(); ++y) {
      if (joint(x, y) > 0.0) {
        maxima[y] = std::max(maxima[y], joint(x, y) / p_x[x]);
      }
    }
  }
  return maxima;
}

}  // namespace

Problem ExcessProblem(const Problem& problem, double d_th) {
  if (!(d_th >= 0.0)) {
    throw std::invalid_argument(fmt::format("d_th = {} must be >= 0", d_th));
  }
  Matrix indicator(problem.x_size(), problem.y_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    for (int y = 0; y < problem.y_size(); ++y) {
      indicator(x, y) = problem.d(x, y) > d_th ? 1.0 : 0.0;
    }
  }
  return problem.WithDistortion(std::move(indicator));
}

ExcessDtilde ExcessDtildeAt(const Problem& problem, double rate, double d_th) {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument(fmt::format("R = {} must be >= 0", rate));
  }
  const DtildeFunction dtilde(ExcessProblem(problem, d_th));
  const double w = std::exp(-rate);
  ExcessDtilde out;
  out.unnormalized = dtilde.Dtilde1(w);
  out.normalized = dtilde.Dtilde(w);
  return out;
}

double ExcessRate(const Problem& problem, double delta, double d_th) {
  const DtildeFunction dtilde(ExcessProblem(problem, d_th));
  if (delta >= dtilde.AtOne()) return 0.0;
  if (delta < dtilde.AtZero()) {
    throw std::invalid_argument(
        fmt::format("delta = {} below the minimal excess probability {}", delta,
                    dtilde.AtZero()));
  }
  return dtilde.Rtilde(delta);
}

double MFunctional(const Matrix& joint) {
  const std::vector<double> p_x = RowSums(joint);
  return PairwiseSum(ColumnMaxima(joint, p_x));
}

DInfIdentityCheck DInfIdentity(const Matrix& joint, int random_trials,
                               std::uint64_t seed) {
  const std::vector<double> p_x = RowSums(joint);
  const std::vector<double> maxima = ColumnMaxima(joint, p_x);
  const double m = PairwiseSum(maxima);
  DInfIdentityCheck out;
  out.rhs = std::log(m);
  out.q_star.resize(maxima.size());
  for (std::size_t y = 0; y < maxima.size(); ++y) out.q_star[y] = maxima[y] / m;
  out.lhs = DInf(joint, ProductMatrix(p_x, out.q_star));
  out.gap = std::abs(out.lhs - out.rhs);
  out.min_random_excess = std::numeric_limits<double>::infinity();
  for (int t = 0; t < random_trials; ++t) {
    std::mt19937_64 gen = SeededStream(seed, t);
    const std::vector<double> q = RandomSimplexPoint(gen, joint.cols());
    out.min_random_excess = std::min(
        out.min_random_excess, DInf(joint, ProductMatrix(p_x, q)) - out.rhs);
  }
  return out;
}

BoundGap BoundGapComparison(double x) {
  if (!(x > 1.0)) throw std::invalid_argument(fmt::format("x = {} <= 1", x));
  BoundGap out;
  out.x = x;
  out.ours = GOf(x);
  out.theirs = std::log(std::log(x));
  out.diff = out.ours - out.theirs;
  return out;
}

BoundGapSweep SweepBoundGap(double lo, double hi, int samples) {
  if (!(lo > 1.0 && hi > lo && samples >= 2)) {
    throw std::invalid_argument("need 1 < lo < hi and at least 2 samples");
  }
  BoundGapSweep out;
  const double step = std::log(hi / lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double x = i + 1 == samples ? hi : lo * std::exp(step * i);
    out.points.push_back(BoundGapComparison(x));
  }
  out.x0 = std::numeric_limits<double>::infinity();
  for (int i = samples - 1; i >= 0; --i) {
    const double diff = out.points[i].diff;
    if (!(diff > 0.0 && diff < 1.0)) break;
    out.x0 = out.points[i].x;
  }
  out.all_in_unit_interval = out.x0 == out.points.front().x;
  return out;
}

}  // namespace oneshot
