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

#include "oneshot/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>

#include "fmt/format.h"
#include "oneshot/pairwise.h"
#include "oneshot/random.h"

namespace oneshot {

namespace {

void RequireTrials(std::int64_t trials) {
  if (trials < 1) {
    throw std::invalid_argument(
        fmt::format("trials = {} must be >= 1", trials));
  }
}

// Fills out[t] = fn(t) for every trial, split into contiguous blocks.
void ParallelFill(std::vector<double>& out, int threads,
                  const std::function<double(std::int64_t)>& fn) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  if (threads <= 0) {
    threads =
        static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = static_cast<int>(std::min<std::int64_t>(threads, n));
  if (threads <= 1) {
    for (std::int64_t t = 0; t < n; ++t) out[t] = fn(t);
    return;
  }
  std::vector<std::future<void>> workers;
  const std::int64_t block = (n + threads - 1) / threads;
  for (std::int64_t begin = 0; begin < n; begin += block) {
    const std::int64_t end = std::min(n, begin + block);
    workers.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::int64_t t = begin; t < end; ++t) out[t] = fn(t);
    }));
  }
  for (auto& w : workers) w.get();
}

void MeanAndStdError(const std::vector<double>& values, double& mean,
                     double& std_error) {
  const double n = static_cast<double>(values.size());
  mean = PairwiseSum(values) / n;
  if (values.size() < 2) {
    std_error = 0.0;
    return;
  }
  std::vector<double> squares(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    squares[i] = (values[i] - mean) * (values[i] - mean);
  }
  std_error = std::sqrt(PairwiseSum(squares) / (n - 1.0) / n);
}

EmpiricalCdfSummary Summarize(std::vector<double> samples,
                              const std::function<double(double)>& cdf) {
  EmpiricalCdfSummary out;
  out.samples = static_cast<std::int64_t>(samples.size());
  MeanAndStdError(samples, out.mean, out.std_error);
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    out.ks_statistic = std::max({out.ks_statistic, (i + 1) / n - f, f - i / n});
  }
  out.critical_value = KsCriticalValue(out.samples);
  out.passes = out.ks_statistic <= out.critical_value;
  return out;
}

// Inverse-CDF sampling from Q_Y over a precomputed cumulative vector.
class ReproductionSampler {
 public:
  explicit ReproductionSampler(std::span<const double> q) {
    cumulative_.resize(q.size());
    double running = 0.0;
    for (std::size_t y = 0; y < q.size(); ++y) {
      running += q[y];
      cumulative_[y] = running;
      if (q[y] > 0.0) last_positive_ = static_cast<int>(y);
    }
  }

  int Draw(std::mt19937_64& gen) const {
    const double u = UniformUnit(gen) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<int>(it - cumulative_.begin()), last_positive_);
  }

 private:
  std::vector<double> cumulative_;
  int last_positive_ = 0;
};

}  // namespace

double KsCriticalValue(std::int64_t samples, double alpha) {
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) /
         std::sqrt(static_cast<double>(samples));
}

MCEstimate SimulateRandomCode(const Problem& problem, std::int64_t m,
                              std::int64_t trials, std::uint64_t seed,
                              int threads) {
  RequireTrials(trials);
  if (m < 1) throw std::invalid_argument(fmt::format("M = {} must be >= 1", m));
  const ReproductionSampler sampler(problem.q_y());
  std::vector<double> per_trial(trials);
  ParallelFill(per_trial, threads, [&](std::int64_t t) {
    std::mt19937_64 gen = SeededStream(seed, static_cast<std::uint64_t>(t));
    std::vector<double> best(problem.x_size(),
                             std::numeric_limits<double>::infinity());
    for (std::int64_t i = 0; i < m; ++i) {
      const int y = sampler.Draw(gen);
      for (int x = 0; x < problem.x_size(); ++x) {
        best[x] = std::min(best[x], problem.d(x, y));
      }
    }
    for (int x = 0; x < problem.x_size(); ++x) best[x] *= problem.p_x()[x];
    return PairwiseSum(best);
  });

  MCEstimate out;
  out.trials = trials;
  out.seed = seed;
  MeanAndStdError(per_trial, out.mean, out.std_error);
  return out;
}

EmpiricalCdfSummary CompareToCdf(std::vector<double> samples,
                                 const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  return Summarize(std::move(samples), cdf);
}

EmpiricalCdfSummary SampleMinUniform(std::int64_t m, std::int64_t trials,
                                     std::uint64_t seed) {
  RequireTrials(trials);
  if (m < 1) throw std::invalid_argument(fmt::format("M = {} must be >= 1", m));
  std::vector<double> samples(trials);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 gen = SeededStream(seed, static_cast<std::uint64_t>(t));
    double low = 1.0;
    for (std::int64_t i = 0; i < m; ++i) low = std::min(low, UniformUnit(gen));
    samples[t] = low;
  }
  const double md = static_cast<double>(m);
  return Summarize(std::move(samples),
                   [md](double w) { return -std::expm1(md * std::log1p(-w)); });
}

EmpiricalCdfSummary SamplePcUniformity(const Problem& problem, int x,
                                       std::int64_t trials,
                                       std::uint64_t seed) {
  RequireTrials(trials);
  if (x < 0 || x >= problem.x_size()) {
    throw std::invalid_argument(fmt::format("x = {} out of range", x));
  }
  const ReproductionSampler sampler(problem.q_y());
  std::vector<double> samples(trials);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 gen = SeededStream(seed, static_cast<std::uint64_t>(t));
    const int y = sampler.Draw(gen);
    samples[t] = PairwiseCorrect(problem, x, y, UniformUnit(gen));
  }
  return Summarize(std::move(samples),
                   [](double w) { return std::clamp(w, 0.0, 1.0); });
}

}  // namespace oneshot
