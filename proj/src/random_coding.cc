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

#include "oneshot/random_coding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "boost/math/tools/minima.hpp"
#include "fmt/format.h"

namespace oneshot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlushBelow = 1e-300;
constexpr int kRateGridPoints = 256;

void CheckM(std::int64_t m) {
  if (m < 1) throw std::invalid_argument(fmt::format("M = {} < 1", m));
}

void CheckUnit(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside [0, 1]", w));
  }
}

// (1 - w)^n in the log domain; 0^0 = 1.
double PowOneMinus(double w, std::int64_t n) {
  if (n == 0) return 1.0;
  if (w >= 1.0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log1p(-w));
}

// Antiderivative of M(M-1)(1-w)^{M-2}, the weight that multiplies the
// intercept of D1 = c + s w once D = D1 / w is expanded.
double InterceptAntiderivative(double w, std::int64_t m) {
  return -static_cast<double>(m) * PowOneMinus(w, m - 1);
}

// t - log(1 + t) without cancellation for small t.
double TMinusLog1p(double t) {
  if (t < 0.1) {
    double sum = 0.0;
    double power = t * t;
    for (int k = 2; k < 40; ++k) {
      const double term = power / k;
      sum += (k % 2 == 0) ? term : -term;
      if (term < 1e-18 * sum) break;
      power *= t;
    }
    return sum;
  }
  return t - std::log1p(t);
}

}  // namespace

double GM(double w, std::int64_t m) {
  CheckUnit(w);
  CheckM(m);
  const double n = static_cast<double>(m - 1);
  return -PowOneMinus(w, m - 1) * (n * w + 1.0);
}

double MinUniformPdf(double w, std::int64_t m) {
  CheckUnit(w);
  CheckM(m);
  return static_cast<double>(m) * PowOneMinus(w, m - 1);
}

double MinUniformCdf(double w, std::int64_t m) {
  CheckUnit(w);
  CheckM(m);
  return -std::expm1(static_cast<double>(m) * std::log1p(-w));
}

std::int64_t CodewordsForRate(double rate) {
  if (!(rate >= 0.0)) throw std::invalid_argument("rate must be >= 0");
  return static_cast<std::int64_t>(std::floor(std::exp(rate))) + 1;
}

RandomCodingResult ExactExpectedDistortion(const DtildeFunction& dtilde,
                                           std::int64_t m) {
  CheckM(m);
  RandomCodingResult result;
  result.m = m;
  if (m == 1) {
    result.exact_distortion = dtilde.AtOne();
    return result;
  }
  const PiecewiseLinear& d1 = dtilde.dtilde1();
  const std::vector<double>& b = d1.breakpoints();
  for (int i = 0; i < d1.num_segments(); ++i) {
    const PiecewiseLinear::Segment& s = d1.segments()[i];
    const double lo = b[i];
    const double hi = b[i + 1];
    double contribution = s.intercept * (InterceptAntiderivative(hi, m) -
                                         InterceptAntiderivative(lo, m)) +
                          s.slope * (GM(hi, m) - GM(lo, m));
    if (std::abs(contribution) < kFlushBelow) contribution = 0.0;
    result.per_segment_contributions.push_back(contribution);
  }
  result.exact_distortion = PairwiseSum(result.per_segment_contributions);
  return result;
}

RandomCodingResult ExactExpectedDistortion(const Problem& problem,
                                           std::int64_t m) {
  return ExactExpectedDistortion(DtildeFunction(problem), m);
}

double FOf(double lambda) {
  if (lambda == -kInf) return 1.0;
  const double t = std::exp(lambda);
  return std::exp(-t) * (t + 1.0);
}

FInverseRange FInverseBracket(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::invalid_argument(fmt::format("x = {} outside (0, 1)", x));
  }
  const double z = -std::log(x);
  return {-std::log(2.0) + std::log1p(std::sqrt(1.0 + 8.0 / z)),
          std::log(2.0 / 3.0) + std::log1p(std::sqrt(1.0 + 4.5 / z))};
}

double FInverse(double x) {
  const FInverseRange bracket = FInverseBracket(x);
  // With t = e^lambda the equation is t - log(1 + t) = -log x.
  const double z = -std::log(x);
  const double shift = std::log(z);
  double lo = shift + bracket.lower - 0.5;
  double hi = shift + bracket.upper + 0.5;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (TMinusLog1p(std::exp(mid)) < z) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double GOf(double x) {
  if (!(x > 1.0)) throw std::invalid_argument(fmt::format("x = {} <= 1", x));
  const double l = std::log(x);
  return std::log(l) + std::log(2.0 / 3.0) +
         std::log1p(std::sqrt(1.0 + 9.0 / (2.0 * l)));
}

AchievabilityBound RandomCodingBound(const DtildeFunction& dtilde, double d_max,
                                     double rate, double lambda) {
  if (!(lambda < rate)) {
    throw std::invalid_argument(
        fmt::format("lambda = {} must be below R = {}", lambda, rate));
  }
  AchievabilityBound out;
  out.lambda = lambda;
  out.w = std::exp(-(rate - lambda));
  const double at_w = dtilde.Dtilde(out.w);
  const double f = FOf(lambda);
  out.bound = at_w + (dtilde.AtOne() - at_w) * f;
  out.dmax_bound = at_w + d_max * f;
  return out;
}

AchievabilityBound RandomCodingBound(const Problem& problem, double rate,
                                     double lambda) {
  return RandomCodingBound(DtildeFunction(problem), problem.d_max(), rate,
                           lambda);
}

AchievabilityBound BestRandomCodingBound(const DtildeFunction& dtilde,
                                         double d_max, double rate, int count,
                                         double step) {
  if (!(count >= 1 && step > 0.0)) {
    throw std::invalid_argument("need count >= 1 and step > 0");
  }
  AchievabilityBound best;
  best.bound = kInf;
  for (int k = 1; k <= count; ++k) {
    const AchievabilityBound b =
        RandomCodingBound(dtilde, d_max, rate, rate - step * k);
    if (b.bound < best.bound) best = b;
  }
  return best;
}

RateForDistortion RateForDistortionLevel(const Problem& problem, double d_req) {
  const DtildeFunction dtilde(problem);
  const double low = dtilde.AtZero();
  const double top = dtilde.AtOne();
  if (!(d_req > low && d_req < top)) {
    throw std::invalid_argument(
        fmt::format("d_req = {} outside ({}, {})", d_req, low, top));
  }

  auto exact_objective = [&](double z) {
    if (!(z > low && z < d_req)) return kInf;
    return dtilde.Rtilde(z) + FInverse((d_req - z) / (top - z));
  };
  auto relaxed_objective = [&](double z) {
    if (!(z > low && z < d_req)) return kInf;
    return dtilde.Rtilde(z) + GOf((top - z) / (d_req - z));
  };

  std::vector<double> grid;
  for (double b : dtilde.dtilde1().breakpoints()) {
    if (b > 0.0) {
      const double z = dtilde.Dtilde(b);
      if (z > low && z < d_req) grid.push_back(z);
    }
  }
  for (int i = 1; i <= kRateGridPoints; ++i) {
    grid.push_back(low + (d_req - low) * i / (kRateGridPoints + 1));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto minimize = [&](auto&& objective, double& best_z) {
    std::size_t best = 0;
    double best_value = kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = objective(grid[i]);
      if (v < best_value) {
        best_value = v;
        best = i;
      }
    }
    best_z = grid[best];
    const double a = best == 0 ? low : grid[best - 1];
    const double c = best + 1 == grid.size() ? d_req : grid[best + 1];
    const auto refined = boost::math::tools::brent_find_minima(
        objective, a, c, std::numeric_limits<double>::digits / 2);
    if (refined.second < best_value) {
      best_value = refined.second;
      best_z = refined.first;
    }
    return best_value;
  };

  RateForDistortion out;
  out.d_req = d_req;
  out.raw_rate = minimize(exact_objective, out.z);
  out.lambda = FInverse((d_req - out.z) / (top - out.z));
  out.rate = std::max(0.0, out.raw_rate);
  out.raw_rate_g = minimize(relaxed_objective, out.z_g);
  out.rate_g = std::max(0.0, out.raw_rate_g);
  return out;
}

}  // namespace oneshot
