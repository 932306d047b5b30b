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

// Converse side. A code C with M codewords induces the prior
// Q^C(y) = multiplicity(y) / M, and its average distortion equals
// D(1/M, Q^C) exactly. Minimizing D(e^{-R}, Q) over all priors therefore
// lower-bounds every code of rate R.

#ifndef ONESHOT_CONVERSE_H_
#define ONESHOT_CONVERSE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oneshot/model.h"

namespace oneshot {

// Tolerance asserted by the converse equality check.
inline constexpr double kConverseTolerance = 1e-10;

std::vector<double> CodePrior(const Problem& problem, const Code& code);

// Encoder mapping x to its nearest codewords, ties split evenly over the
// tied codeword copies.
Channel OptimalEncoder(const Problem& problem, const Code& code);

// E_{P_X}[min_{y in C} d(X, y)].
double CodeDistortion(const Problem& problem, const Code& code);

struct ConverseCheck {
  double lhs = 0.0;  // CodeDistortion
  double rhs = 0.0;  // D(1/M, Q^C)
  double gap = 0.0;
  bool holds() const { return gap <= kConverseTolerance; }
};

ConverseCheck ConverseEqualityCheck(const Problem& problem, const Code& code);

// D(w, q) for the problem's source and distortion with prior q.
double DtildeAtPrior(const Problem& problem, std::span<const double> q,
                     double w);

// Subgradient of q -> D(w, q):
//   g(y) = -w^{-1} sum_x P_X(x) max(0, theta_x - d(x, y)),
// theta_x being the distortion level of x at quantile w under q. theta_x is
// the multiplier of the capacity constraint W(y|x) <= q(y) / w.
std::vector<double> DualitySubgradient(const Problem& problem,
                                       std::span<const double> q, double w);

struct PriorOptConfig {
  int iterations = 3000;
  int random_starts = 8;
  std::uint64_t seed = 0x5eedULL;
  // Exhaustive simplex grid for y_size <= grid_max_y.
  double grid_step = 0.01;
  int grid_max_y = 3;
  // Re-solves the joint (W, Q) linear program after the descent.
  bool exact_polish = true;
  // Largest LP tableau (rows * columns) attempted.
  std::int64_t max_lp_entries = 4'000'000;
  bool parallel = true;
};

struct PriorOptResult {
  std::vector<double> q_star;
  double value = 0.0;
  int iterations = 0;
  // value minus the best available reference: the LP optimum when solved,
  // else the grid minimum, else the spread among descent starts.
  double certificate_gap = 0.0;
  std::string certificate;  // "lp", "grid" or "multistart"
  double descent_value = 0.0;
  std::vector<double> start_values;
  std::optional<double> grid_value;
  std::optional<double> lp_value;
};

// Minimizes q -> D(e^{-R}, q) over the simplex by exponentiated-gradient
// descent from the uniform prior and config.random_starts random priors.
// Throws std::runtime_error if an iterate's value is not finite.
PriorOptResult OptimizePrior(const Problem& problem, double rate,
                             const PriorOptConfig& config = {});

struct SandwichResult {
  double lower = 0.0;
  double upper = 0.0;
  double best_lambda = 0.0;
  std::vector<double> q_star;  // minimizer behind `lower`
  bool ordered() const { return lower <= upper; }
};

// lower = min_Q D(e^{-R}, Q);
// upper = min over lambda < R of min_Q D(e^{-(R - lambda)}, Q)
//         + d_max f(lambda), with d_max taken over supp(P_X) x Y.
SandwichResult DhatSandwich(const Problem& problem, double rate,
                            std::span<const double> lambda_grid,
                            const PriorOptConfig& config = {});

// lambda_k = R - step * k for k = 1..count.
std::vector<double> DefaultLambdaGrid(double rate, int count = 40,
                                      double step = 0.25);

}  // namespace oneshot

#endif  // ONESHOT_CONVERSE_H_
