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

// Monte Carlo oracles. Trial t always draws from SeededStream(seed, t) and
// results are reduced in trial order, so the output does not depend on the
// number of worker threads.

#ifndef ONESHOT_MONTECARLO_H_
#define ONESHOT_MONTECARLO_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "oneshot/model.h"

namespace oneshot {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// Draws M codewords i.i.d. from Q_Y per trial and averages
// E_{P_X}[min_i d(X, Y_i)], the expectation over X being an exact sum.
// threads <= 0 uses the hardware concurrency.
MCEstimate SimulateRandomCode(const Problem& problem, std::int64_t m,
                              std::int64_t trials, std::uint64_t seed,
                              int threads = 0);

struct EmpiricalCdfSummary {
  std::int64_t samples = 0;
  double ks_statistic = 0.0;
  // sqrt(-log(alpha / 2) / 2) / sqrt(n), the asymptotic one-sample
  // Kolmogorov-Smirnov critical value at alpha = 1e-3.
  double critical_value = 0.0;
  bool passes = false;
  double mean = 0.0;
  double std_error = 0.0;
};

double KsCriticalValue(std::int64_t samples, double alpha = 1e-3);

// One-sample Kolmogorov-Smirnov comparison of `samples` with `cdf`.
EmpiricalCdfSummary CompareToCdf(std::vector<double> samples,
                                 const std::function<double(double)>& cdf);

// Min of M independent uniforms against the law 1 - (1 - w)^M.
EmpiricalCdfSummary SampleMinUniform(std::int64_t m, std::int64_t trials,
                                     std::uint64_t seed);

// p_c(x, Y, U) with Y ~ Q_Y, U ~ Uniform(0, 1) against the uniform law.
EmpiricalCdfSummary SamplePcUniformity(const Problem& problem, int x,
                                       std::int64_t trials, std::uint64_t seed);

}  // namespace oneshot

#endif  // ONESHOT_MONTECARLO_H_
