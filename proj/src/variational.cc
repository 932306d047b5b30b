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
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fmt/format.h"
#include "oneshot/dtilde.h"
#include "oneshot/pairwise.h"
#include "oneshot/random.h"

namespace oneshot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieRelativeTolerance = 1e-12;
constexpr double kInequalitySlack = 1e-10;

bool SameRatio(double a, double b) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= kTieRelativeTolerance * std::max(a, b);
}

}  // namespace

WeightedMeasure WeightedMeasure::FromMatrix(Matrix weights) {
  for (double v : weights.data()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("measure",
                            fmt::format("invalid measure entry {}", v));
    }
  }
  const double total = PairwiseSum(weights.data());
  return {std::move(weights), total};
}

WeightedMeasure DistortionMeasure(const Problem& problem) {
  Matrix m(problem.x_size(), problem.y_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    for (int y = 0; y < problem.y_size(); ++y) {
      m(x, y) = problem.p_x()[x] * problem.q_y()[y] * problem.d(x, y);
    }
  }
  return WeightedMeasure::FromMatrix(std::move(m));
}

Matrix ProductMatrix(std::span<const double> q_x, std::span<const double> q_y) {
  Matrix m(static_cast<int>(q_x.size()), static_cast<int>(q_y.size()));
  for (std::size_t x = 0; x < q_x.size(); ++x) {
    for (std::size_t y = 0; y < q_y.size(); ++y) {
      m(static_cast<int>(x), static_cast<int>(y)) = q_x[x] * q_y[y];
    }
  }
  return m;
}

NPResult NeymanPearsonBeta(double alpha, const Matrix& p,
                           const WeightedMeasure& mu) {
  if (p.rows() != mu.weights.rows() || p.cols() != mu.weights.cols()) {
    throw std::invalid_argument("P and mu shapes differ");
  }
  const std::span<const double> pv = p.data();
  const std::span<const double> mv = mu.weights.data();
  const double total_p = PairwiseSum(pv);
  if (!(alpha >= 0.0 && alpha <= total_p + 1e-12)) {
    throw std::invalid_argument(
        fmt::format("alpha = {} outside [0, {}]", alpha, total_p));
  }

  struct Entry {
    int index;
    double ratio;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    if (pv[i] > 0.0) {
      entries.push_back({static_cast<int>(i), mv[i] / pv[i]});
    } else if (mv[i] > 0.0) {
      entries.push_back({static_cast<int>(i), kInf});
    }
  }
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.ratio < b.ratio; });

  NPResult result;
  result.test.accept = Matrix(p.rows(), p.cols());
  std::vector<double> accept(pv.size(), 0.0);
  std::vector<double> accepted_p;
  std::vector<double> accepted_mu;
  double reached = 0.0;
  for (std::size_t start = 0; start < entries.size() && reached < alpha;) {
    std::size_t end = start + 1;
    while (end < entries.size() &&
           SameRatio(entries[start].ratio, entries[end].ratio)) {
      ++end;
    }
    double group_p = 0.0;
    for (std::size_t k = start; k < end; ++k) group_p += pv[entries[k].index];
    // A group without P mass cannot raise alpha, only beta.
    if (!(group_p > 0.0)) break;
    double rate = 1.0;
    if (reached + group_p > alpha) {
      rate = group_p > 0.0 ? (alpha - reached) / group_p : 0.0;
    }
    for (std::size_t k = start; k < end; ++k) {
      const int i = entries[k].index;
      accept[i] = rate;
      accepted_p.push_back(rate * pv[i]);
      accepted_mu.push_back(rate * mv[i]);
    }
    result.test.threshold = entries[start].ratio;
    reached = PairwiseSum(accepted_p);
    start = end;
  }
  for (std::size_t i = 0; i < accept.size(); ++i) {
    result.test.accept(static_cast<int>(i) / p.cols(),
                       static_cast<int>(i) % p.cols()) = accept[i];
  }
  result.test.achieved_alpha = reached;
  result.beta = PairwiseSum(accepted_mu);
  return result;
}

Witness WitnessQx(const Problem& problem, double w) {
  if (!(w > 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside (0, 1]", w));
  }
  Witness out;
  std::vector<double> weights(problem.x_size(), 0.0);
  for (int x = 0; x < problem.x_size(); ++x) {
    const Level level = FindLevel(problem, x, w);
    out.level_letters.push_back(level.y);
    weights[x] = problem.p_x()[x] * problem.d(x, level.y);
  }
  out.lambda = PairwiseSum(weights);
  out.degenerate = !(out.lambda > 0.0);
  if (out.degenerate) {
    out.q_x = problem.p_x();
    return out;
  }
  out.q_x.resize(weights.size());
  for (std::size_t x = 0; x < weights.size(); ++x) {
    out.q_x[x] = weights[x] / out.lambda;
  }
  return out;
}

SupFormResult SupFormValue(const Problem& problem, double w, int random_trials,
                           std::uint64_t seed) {
  SupFormResult out;
  out.witness = WitnessQx(problem, w);
  const WeightedMeasure mu = DistortionMeasure(problem);
  if (out.witness.degenerate) {
    out.value = 0.0;
  } else {
    out.value =
        NeymanPearsonBeta(w, ProductMatrix(out.witness.q_x, problem.q_y()), mu)
            .beta;
  }
  out.normalized = out.value / w;
  for (int t = 0; t < random_trials; ++t) {
    std::mt19937_64 gen = SeededStream(seed, t);
    const std::vector<double> q_x = RandomSimplexPoint(gen, problem.x_size());
    const double beta =
        NeymanPearsonBeta(w, ProductMatrix(q_x, problem.q_y()), mu).beta;
    out.max_random_beta = std::max(out.max_random_beta, beta);
  }
  out.random_dominated = out.max_random_beta <= out.value + kInequalitySlack;
  return out;
}

double DInf(const Matrix& numerator, const Matrix& denominator) {
  if (numerator.rows() != denominator.rows() ||
      numerator.cols() != denominator.cols()) {
    throw std::invalid_argument("shapes differ");
  }
  const std::span<const double> n = numerator.data();
  const std::span<const double> d = denominator.data();
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (d[i] > 0.0) {
      best = std::max(best, n[i] / d[i]);
      any = true;
    } else if (n[i] > 0.0) {
      return kInf;
    }
  }
  if (!any) return -kInf;
  return std::log(best);
}

InfFormResult InfFormValue(const Problem& problem, double rate) {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument(fmt::format("R = {} must be >= 0", rate));
  }
  const double scale = std::exp(rate);
  Matrix m(problem.x_size(), problem.y_size());
  std::vector<int> order(problem.y_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return problem.d(x, a) < problem.d(x, b);
    });
    double remaining = 1.0;
    for (std::size_t i = 0; i < order.size() && remaining > 0.0;) {
      const double level = problem.d(x, order[i]);
      std::size_t end = i;
      double group_q = 0.0;
      for (; end < order.size() && problem.d(x, order[end]) == level; ++end) {
        group_q += problem.q_y()[order[end]];
      }
      const double capacity = scale * group_q;
      if (group_q > 0.0) {
        const double take = std::min(capacity, remaining);
        for (std::size_t k = i; k < end; ++k) {
          m(x, order[k]) = take * problem.q_y()[order[k]] / group_q;
        }
        remaining = capacity >= remaining ? 0.0 : remaining - capacity;
      }
      i = end;
    }
  }
  Channel channel(std::move(m), 1e-12);
  const double value = ExpectedDistortion(problem, channel);
  return {value, std::move(channel)};
}

InfoSpectrumCheck InfoSpectrumInequality(const Problem& problem,
                                         const Channel& channel, double rate,
                                         double delta) {
  if (channel.x_size() != problem.x_size() ||
      channel.y_size() != problem.y_size()) {
    throw std::invalid_argument("channel shape does not match the problem");
  }
  const Matrix joint = JointDistribution(problem.p_x(), channel);
  std::vector<double> marginal(problem.y_size());
  std::vector<double> column(problem.x_size());
  for (int y = 0; y < problem.y_size(); ++y) {
    for (int x = 0; x < problem.x_size(); ++x) column[x] = joint(x, y);
    marginal[y] = PairwiseSum(column);
  }
  const double threshold = rate - delta;
  std::vector<double> in_event;
  for (int x = 0; x < problem.x_size(); ++x) {
    for (int y = 0; y < problem.y_size(); ++y) {
      if (joint(x, y) <= 0.0) continue;
      const double density = std::log(channel(x, y) / marginal[y]);
      if (density <= threshold) in_event.push_back(joint(x, y));
    }
  }

  InfoSpectrumCheck out;
  out.event_probability = PairwiseSum(in_event);
  if (!(out.event_probability > 0.0)) {
    out.vacuous = true;
    out.lambda = kInf;
    return out;
  }
  out.lambda = std::max(0.0, -std::log(out.event_probability));
  out.w = std::exp(-threshold - out.lambda);
  if (out.w > 1.0) {
    out.vacuous = true;
    return out;
  }
  const Problem with_marginal = problem.WithPrior(marginal);
  out.lhs = Dtilde(with_marginal, out.w);
  out.rhs = ExpectedDistortion(problem, channel) * std::exp(out.lambda);
  out.holds = out.lhs <= out.rhs + kInequalitySlack;
  return out;
}

}  // namespace oneshot
