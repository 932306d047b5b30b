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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every criterion uses fixed seeds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "oneshot/converse.h"
#include "oneshot/dtilde.h"
#include "oneshot/excess.h"
#include "oneshot/model.h"
#include "oneshot/montecarlo.h"
#include "oneshot/pairwise.h"
#include "oneshot/random.h"
#include "oneshot/random_coding.h"
#include "oneshot/variational.h"
#include "test_util.h"

namespace oneshot {
namespace {

using testing::RandomProblem;
using testing::UniformInt;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string name;
  double time_limit_s = 0.0;  // 0 means no limit
  std::function<Outcome()> run;
};

int SampleIndex(std::mt19937_64& gen, std::span<const double> probs) {
  const double u = UniformUnit(gen);
  double running = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    running += probs[i];
    last = static_cast<int>(i);
    if (u < running) return last;
  }
  return last;
}

bool NearBreakpoint(const DtildeFunction& dtilde, double w, double gap) {
  for (double b : dtilde.dtilde1().breakpoints()) {
    if (std::abs(b - w) < gap) return true;
  }
  return false;
}

double BestCodeDistortion(const Problem& p, int m) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> members(m, 0);
  while (true) {
    best = std::min(best, CodeDistortion(p, Code{members}));
    int i = m - 1;
    while (i >= 0 && ++members[i] == p.y_size()) members[i--] = 0;
    if (i < 0) return best;
  }
}

Outcome ExactFormulaOracle() {
  const Problem p = testing::BinaryHamming();
  const DtildeFunction dtilde(p);
  double worst = 0.0;
  bool brute_exact = true;
  for (int m = 2; m <= 10; ++m) {
    const double expected = std::ldexp(1.0, -m);
    worst = std::max(
        worst, std::abs(ExactExpectedDistortion(dtilde, m).exact_distortion -
                        expected));
    brute_exact =
        brute_exact && testing::BruteForceRandomCoding(p, m) == expected;
  }
  return {worst <= 1e-12 && brute_exact,
          fmt::format("max |exact - 2^-M| = {:.3g}, brute force {}", worst,
                      brute_exact ? "exact" : "differs")};
}

Outcome MonteCarloPanel() {
  constexpr std::int64_t kMs[] = {2, 3, 5, 10};
  std::mt19937_64 gen(0xacce02);
  int within = 0;
  double worst_z = 0.0;
  for (int cell = 0; cell < 20; ++cell) {
    const Problem p = RandomProblem(gen, {.min_x = 2,
                                          .max_x = 8,
                                          .min_y = 2,
                                          .max_y = 8,
                                          .integer_distortion = cell % 2 == 1});
    const std::int64_t m = kMs[cell % 4];
    const double exact = ExactExpectedDistortion(p, m).exact_distortion;
    const MCEstimate mc = SimulateRandomCode(p, m, 100000, 1000 + cell);
    const double diff = std::abs(exact - mc.mean);
    if (diff <= 3.0 * mc.std_error) ++within;
    if (mc.std_error > 0.0) worst_z = std::max(worst_z, diff / mc.std_error);
  }
  return {within >= 19,
          fmt::format("{}/20 cells within 3 stderr, max |z| = {:.2f}", within,
                      worst_z)};
}

Outcome ConverseEquality() {
  std::mt19937_64 gen(0xacce03);
  double worst = 0.0;
  int with_repeats = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Problem p = RandomProblem(
        gen, {.max_x = 6, .max_y = 6, .integer_distortion = trial % 2 == 0});
    const int m = UniformInt(gen, 1, 6);
    std::vector<int> members(m);
    for (int& y : members) y = UniformInt(gen, 0, p.y_size() - 1);
    if (trial % 4 == 0 && m >= 2) members[1] = members[0];
    std::vector<int> sorted(members);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      ++with_repeats;
    }
    worst = std::max(worst, ConverseEqualityCheck(p, Code{members}).gap);
  }
  return {worst <= 1e-10 && with_repeats > 0,
          fmt::format("max gap = {:.3g} over 100 codes, {} with repeats", worst,
                      with_repeats)};
}

Outcome ConverseDominance() {
  std::mt19937_64 gen(0xacce04);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 20; ++trial) {
    const Problem p =
        RandomProblem(gen, {.max_y = 5, .integer_distortion = trial % 2 == 1});
    for (int m = 1; m <= 3; ++m) {
      const double lower = OptimizePrior(p, std::log(m)).value;
      worst = std::min(worst, BestCodeDistortion(p, m) - lower);
    }
  }
  return {worst >= -1e-9,
          fmt::format("min (best code - optimized prior) = {:.3g}", worst)};
}

Outcome VariationalEqualities() {
  std::mt19937_64 gen(0xacce05);
  double worst_sup = 0.0;
  double worst_inf = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Problem p = RandomProblem(
        gen, {.max_x = 5, .max_y = 5, .integer_distortion = trial % 2 == 1});
    const DtildeFunction dtilde(p);
    for (int k = 0; k < 10;) {
      const double w = 1.0 - UniformUnit(gen);
      if (NearBreakpoint(dtilde, w, 1e-6)) continue;
      ++k;
      const double d = dtilde.Dtilde(w);
      worst_sup =
          std::max(worst_sup, std::abs(SupFormValue(p, w).value - w * d));
      worst_inf = std::max(worst_inf,
                           std::abs(InfFormValue(p, -std::log(w)).value - d));
    }
  }
  return {worst_sup <= 1e-9 && worst_inf <= 1e-9,
          fmt::format("max sup-form error {:.3g}, max inf-form error {:.3g}",
                      worst_sup, worst_inf)};
}

Outcome Uniformity() {
  std::mt19937_64 gen(0xacce06);
  std::vector<Problem> problems;
  for (int i = 0; i < 50; ++i) {
    problems.push_back(RandomProblem(gen, {.max_x = 6,
                                           .max_y = 6,
                                           .integer_distortion = i % 2 == 0,
                                           .zero_probability = 0.1}));
  }
  double worst = 0.0;
  for (const Problem& p : problems) {
    for (int x = 0; x < p.x_size(); ++x) {
      for (int k = 0; k <= 100; ++k) {
        const double w = k / 100.0;
        worst = std::max(worst, std::abs(PcCdf(p, x, w) - w));
      }
    }
  }
  // p_c(x, Y, U) is uniform for every x, so one sample pooled over all
  // problems and source letters is uniform too.
  constexpr std::int64_t kSamples = 100000;
  std::vector<double> samples(kSamples);
  for (std::int64_t t = 0; t < kSamples; ++t) {
    const Problem& p = problems[t % problems.size()];
    std::mt19937_64 stream = SeededStream(0xacce06, t);
    const int x = SampleIndex(stream, p.p_x());
    const int y = SampleIndex(stream, p.q_y());
    samples[t] = PairwiseCorrect(p, x, y, UniformUnit(stream));
  }
  const EmpiricalCdfSummary ks = CompareToCdf(
      std::move(samples), [](double w) { return std::clamp(w, 0.0, 1.0); });
  return {worst <= 1e-12 && ks.passes,
          fmt::format("max |pc_cdf - w| = {:.3g}; KS {:.4f} vs critical "
                      "{:.4f} on {} pooled samples",
                      worst, ks.ks_statistic, ks.critical_value, ks.samples)};
}

Outcome Convexity() {
  std::mt19937_64 gen(0xacce07);
  double worst = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    const Problem p = RandomProblem(
        gen, {.max_x = 5, .max_y = 6, .integer_distortion = trial % 2 == 0});
    const double w = 1.0 - UniformUnit(gen);
    const std::vector<double> q0 = RandomSimplexPoint(gen, p.y_size());
    const std::vector<double> q1 = RandomSimplexPoint(gen, p.y_size());
    std::vector<double> mid(q0.size());
    for (std::size_t y = 0; y < mid.size(); ++y) mid[y] = 0.5 * (q0[y] + q1[y]);
    const double chord =
        0.5 * (DtildeAtPrior(p, q0, w) + DtildeAtPrior(p, q1, w));
    worst = std::max(worst, DtildeAtPrior(p, mid, w) - chord);
  }
  return {worst <= 1e-10,
          fmt::format("max midpoint excess = {:.3g} over 200 segments", worst)};
}

Outcome SubgradientCheck() {
  std::mt19937_64 gen(0xacce08);
  int checked = 0;
  int skipped = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000 && checked < 50; ++trial) {
    const Problem p = RandomProblem(gen, {.min_y = 2, .max_y = 5});
    std::vector<double> q = RandomSimplexPoint(gen, p.y_size());
    double sum = 0.0;
    for (double& e : q) sum += (e += 0.05);
    for (double& e : q) e /= sum;
    const double w = 0.05 + 0.9 * UniformUnit(gen);
    const std::vector<double> g = DualitySubgradient(p, q, w);
    double mean = 0.0;
    for (double e : g) mean += e / g.size();

    // Central differences along e_y - 1/n stay on the simplex; a point is
    // excluded when forward and backward slopes disagree (a kink).
    const double h = 1e-6;
    const int n = p.y_size();
    bool smooth = true;
    double local = 0.0;
    for (int y = 0; y < n && smooth; ++y) {
      auto at = [&](double t) {
        std::vector<double> moved(q);
        for (int k = 0; k < n; ++k) moved[k] += t * ((k == y) - 1.0 / n);
        return DtildeAtPrior(p, moved, w);
      };
      const double center = at(0.0);
      const double forward = (at(h) - center) / h;
      const double backward = (center - at(-h)) / h;
      smooth = std::abs(forward - backward) <= 1e-5;
      local =
          std::max(local, std::abs(0.5 * (forward + backward) - (g[y] - mean)));
    }
    if (!smooth) {
      ++skipped;
      continue;
    }
    ++checked;
    worst = std::max(worst, local);
  }
  return {checked == 50 && worst <= 1e-4,
          fmt::format("{} points checked ({} kinks skipped), max error {:.3g}",
                      checked, skipped, worst)};
}

Outcome FInverseBracketCheck() {
  std::mt19937_64 gen(0xacce09);
  int outside = 0;
  double worst_roundtrip = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = 0.001 + 0.998 * UniformUnit(gen);
    const double lambda = FInverse(x);
    const double diff = lambda - std::log(-std::log(x));
    const FInverseRange bracket = FInverseBracket(x);
    if (!(diff >= bracket.lower && diff <= bracket.upper)) ++outside;
    worst_roundtrip = std::max(worst_roundtrip, std::abs(FOf(lambda) - x));
  }
  return {outside == 0 && worst_roundtrip <= 1e-10,
          fmt::format("{} of 200 outside the bracket, max |f(f^-1(x)) - x| = "
                      "{:.3g}",
                      outside, worst_roundtrip)};
}

Outcome InfoSpectrum() {
  const Channel bsc(Matrix::FromRows({{0.9, 0.1}, {0.1, 0.9}}));
  const InfoSpectrumCheck hand = InfoSpectrumInequality(
      testing::BinaryHamming(), bsc, std::log(1.9) + 0.2, 0.2);
  const bool hand_ok = std::abs(hand.lhs - 0.05) <= 1e-12 &&
                       std::abs(hand.rhs - 0.1) <= 1e-12 && hand.holds;

  std::mt19937_64 gen(0xacce0a);
  int holds = 0;
  int vacuous = 0;
  std::string first_failure;
  for (int trial = 0; trial < 100; ++trial) {
    const Problem p = RandomProblem(gen, {.max_x = 4, .max_y = 4});
    const Channel w(testing::RandomStochastic(gen, p.x_size(), p.y_size()));
    const double rate = 3.0 * UniformUnit(gen);
    const double delta = rate * UniformUnit(gen);
    const InfoSpectrumCheck s = InfoSpectrumInequality(p, w, rate, delta);
    if (s.vacuous) ++vacuous;
    if (s.holds) {
      ++holds;
    } else if (first_failure.empty()) {
      first_failure =
          fmt::format("; first failure at trial {}: lhs {:.5g} > rhs {:.5g}",
                      trial, s.lhs, s.rhs);
    }
  }
  return {hand_ok && holds == 100,
          fmt::format("BSC lhs {:.3g} rhs {:.3g}; {}/100 random triples hold "
                      "({} vacuous){}",
                      hand.lhs, hand.rhs, holds, vacuous, first_failure)};
}

Outcome DInfIdentityAndGap() {
  std::mt19937_64 gen(0xacce0b);
  double worst = 0.0;
  bool dominated = true;
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = UniformInt(gen, 2, 5);
    const int cols = UniformInt(gen, 2, 5);
    const std::vector<double> cells = RandomSimplexPoint(gen, rows * cols);
    Matrix joint(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) joint(r, c) = cells[r * cols + c];
    }
    const DInfIdentityCheck check = DInfIdentity(joint);
    worst = std::max(worst, check.gap);
    dominated = dominated && check.min_random_excess >= -1e-12;
  }
  const BoundGapSweep sweep = SweepBoundGap(2.0, 1e6, 400);
  double lo = 1.0;
  double hi = 0.0;
  for (const BoundGap& g : sweep.points) {
    lo = std::min(lo, g.diff);
    hi = std::max(hi, g.diff);
  }
  return {worst <= 1e-10 && dominated && sweep.all_in_unit_interval,
          fmt::format("max identity gap {:.3g}; g - loglog in [{:.4f}, {:.4f}] "
                      "over [2, 1e6]",
                      worst, lo, hi)};
}

Outcome Sandwich() {
  std::mt19937_64 gen(0xacce0c);
  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 20; ++trial) {
    const Problem p = RandomProblem(
        gen, {.max_x = 5, .max_y = 5, .integer_distortion = trial % 2 == 1});
    const DtildeFunction dtilde(p);
    for (double rate : {0.5, 1.0, 2.0}) {
      const double lower = OptimizePrior(p, rate).value;
      const double upper = BestRandomCodingBound(dtilde, p.d_max(), rate).bound;
      min_margin = std::min(min_margin, upper - lower);
      if (lower > upper + 1e-10) ++violations;
    }
  }
  return {violations == 0,
          fmt::format("{} of 60 violations, min (upper - lower) = {:.3g}",
                      violations, min_margin)};
}

}  // namespace
}  // namespace oneshot

int main() {
  using namespace oneshot;
  const std::vector<Criterion> criteria = {
      {1, "exact formula oracle", 1.0, ExactFormulaOracle},
      {2, "exact formula vs Monte Carlo", 60.0, MonteCarloPanel},
      {3, "converse equality", 5.0, ConverseEquality},
      {4, "converse dominance", 120.0, ConverseDominance},
      {5, "variational equalities", 30.0, VariationalEqualities},
      {6, "pairwise-correct uniformity", 0.0, Uniformity},
      {7, "convexity in the prior", 0.0, Convexity},
      {8, "subgradient", 0.0, SubgradientCheck},
      {9, "f inverse bracket", 0.0, FInverseBracketCheck},
      {10, "information-spectrum inequality", 0.0, InfoSpectrum},
      {11, "D_inf identity and g gap", 0.0, DInfIdentityAndGap},
      {12, "converse below achievability", 0.0, Sandwich},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool pass = outcome.pass;
    std::string timing = fmt::format("{:.2f} s", seconds);
    if (c.time_limit_s > 0.0) {
      timing += fmt::format(" of {:.0f} s allowed", c.time_limit_s);
      pass = pass && seconds < c.time_limit_s;
    }
    if (!pass) ++failed;
    std::printf("%s %2d %s: %s (%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), outcome.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
