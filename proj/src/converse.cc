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

#include "oneshot/converse.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <stdexcept>

#include "fmt/format.h"
#include "oneshot/dtilde.h"
#include "oneshot/pairwise.h"
#include "oneshot/random.h"
#include "oneshot/random_coding.h"
#include "simplex_lp.h"

namespace oneshot {

namespace {

constexpr double kGridStartMix = 1e-3;

struct StartResult {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> q;
};

StartResult Descend(const Problem& problem, double w, std::vector<double> q,
                    int iterations) {
  const double eta0 = 1.0 / (1.0 + problem.d_max_any_prior() / w);
  StartResult best;
  for (int t = 1; t <= iterations; ++t) {
    const double value = DtildeAtPrior(problem, q, w);
    if (!std::isfinite(value)) {
      throw std::runtime_error(
          fmt::format("prior optimization diverged at iteration {}", t));
    }
    if (value < best.value) {
      best.value = value;
      best.q = q;
    }
    const std::vector<double> g = DualitySubgradient(problem, q, w);
    const double g_min = *std::min_element(g.begin(), g.end());
    const double eta = eta0 / std::sqrt(static_cast<double>(t));
    for (std::size_t y = 0; y < q.size(); ++y) {
      q[y] *= std::exp(-eta * (g[y] - g_min));
    }
    const double sum = PairwiseSum(q);
    for (double& e : q) e /= sum;
  }
  return best;
}

void EnumerateGrid(int remaining_units, int position, std::vector<int>& units,
                   const std::function<void(const std::vector<int>&)>& visit) {
  if (position + 1 == static_cast<int>(units.size())) {
    units[position] = remaining_units;
    visit(units);
    return;
  }
  for (int k = 0; k <= remaining_units; ++k) {
    units[position] = k;
    EnumerateGrid(remaining_units - k, position + 1, units, visit);
  }
}

StartResult GridSearch(const Problem& problem, double w, double step) {
  const int total = static_cast<int>(std::lround(1.0 / step));
  StartResult best;
  std::vector<int> units(problem.y_size());
  std::vector<double> q(problem.y_size());
  EnumerateGrid(total, 0, units, [&](const std::vector<int>& u) {
    for (std::size_t y = 0; y < u.size(); ++y) {
      q[y] = static_cast<double>(u[y]) / total;
    }
    const double value = DtildeAtPrior(problem, q, w);
    if (value < best.value) {
      best.value = value;
      best.q = q;
    }
  });
  return best;
}

// Solves min E[d] over (W, Q) with W(y|x) <= Q(y) / w, rows of W summing to
// one and Q on the simplex. Letters with P_X(x) = 0 are dropped.
std::optional<StartResult> SolveJointLp(const Problem& problem, double w,
                                        std::int64_t max_entries,
                                        double* lower_bound) {
  std::vector<int> letters;
  for (int x = 0; x < problem.x_size(); ++x) {
    if (problem.p_x()[x] > 0.0) letters.push_back(x);
  }
  const int nx = static_cast<int>(letters.size());
  const int ny = problem.y_size();
  const int cols = 2 * nx * ny + ny;
  const int rows = nx + 1 + nx * ny;
  if (static_cast<std::int64_t>(rows) * (cols + rows + 1) > max_entries) {
    return std::nullopt;
  }
  auto w_index = [&](int k, int y) { return k * ny + y; };
  auto q_index = [&](int y) { return nx * ny + y; };
  auto s_index = [&](int k, int y) { return nx * ny + ny + k * ny + y; };

  Matrix a(rows, cols);
  std::vector<double> b(rows, 0.0);
  std::vector<double> c(cols, 0.0);
  for (int k = 0; k < nx; ++k) {
    for (int y = 0; y < ny; ++y) {
      a(k, w_index(k, y)) = 1.0;
      c[w_index(k, y)] = problem.p_x()[letters[k]] * problem.d(letters[k], y);
    }
    b[k] = 1.0;
  }
  for (int y = 0; y < ny; ++y) a(nx, q_index(y)) = 1.0;
  b[nx] = 1.0;
  // w W(x,y) + w s(x,y) - Q(y) = 0.
  for (int k = 0; k < nx; ++k) {
    for (int y = 0; y < ny; ++y) {
      const int r = nx + 1 + k * ny + y;
      a(r, w_index(k, y)) = w;
      a(r, s_index(k, y)) = w;
      a(r, q_index(y)) = -1.0;
    }
  }
  const internal::LpResult lp = internal::SolveStandardFormLp(a, b, c);
  if (lp.status != internal::LpStatus::kOptimal) return std::nullopt;
  std::vector<double> q(ny);
  for (int y = 0; y < ny; ++y) q[y] = std::max(0.0, lp.x[q_index(y)]);
  const double sum = PairwiseSum(q);
  if (!(sum > 0.0)) return std::nullopt;
  for (double& e : q) e /= sum;
  *lower_bound = lp.objective;
  return StartResult{DtildeAtPrior(problem, q, w), std::move(q)};
}

}  // namespace

std::vector<double> CodePrior(const Problem& problem, const Code& code) {
  ValidateCode(problem, code);
  std::vector<double> q(problem.y_size(), 0.0);
  std::vector<int> counts(problem.y_size(), 0);
  for (int y : code.members) ++counts[y];
  for (int y = 0; y < problem.y_size(); ++y) {
    q[y] = static_cast<double>(counts[y]) / code.size();
  }
  return q;
}

Channel OptimalEncoder(const Problem& problem, const Code& code) {
  ValidateCode(problem, code);
  std::vector<int> counts(problem.y_size(), 0);
  for (int y : code.members) ++counts[y];
  Matrix m(problem.x_size(), problem.y_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (int y : code.members) best = std::min(best, problem.d(x, y));
    int tied = 0;
    for (int y = 0; y < problem.y_size(); ++y) {
      if (counts[y] > 0 && problem.d(x, y) == best) tied += counts[y];
    }
    for (int y = 0; y < problem.y_size(); ++y) {
      if (counts[y] > 0 && problem.d(x, y) == best) {
        m(x, y) = static_cast<double>(counts[y]) / tied;
      }
    }
  }
  return Channel(std::move(m));
}

double CodeDistortion(const Problem& problem, const Code& code) {
  ValidateCode(problem, code);
  std::vector<double> terms(problem.x_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (int y : code.members) best = std::min(best, problem.d(x, y));
    terms[x] = problem.p_x()[x] * best;
  }
  return PairwiseSum(terms);
}

ConverseCheck ConverseEqualityCheck(const Problem& problem, const Code& code) {
  ConverseCheck check;
  check.lhs = CodeDistortion(problem, code);
  const Problem induced = problem.WithPrior(CodePrior(problem, code));
  check.rhs = Dtilde(induced, 1.0 / code.size());
  check.gap = std::abs(check.lhs - check.rhs);
  return check;
}

double DtildeAtPrior(const Problem& problem, std::span<const double> q,
                     double w) {
  if (!(w > 0.0 && w <= 1.0)) {
    throw std::invalid_argument(fmt::format("w = {} outside (0, 1]", w));
  }
  const Problem with_prior =
      problem.WithPrior(std::vector<double>(q.begin(), q.end()));
  return Dtilde1At(with_prior, w) / w;
}

std::vector<double> DualitySubgradient(const Problem& problem,
                                       std::span<const double> q, double w) {
  const Problem with_prior =
      problem.WithPrior(std::vector<double>(q.begin(), q.end()));
  std::vector<double> theta(problem.x_size(), 0.0);
  for (int x = 0; x < problem.x_size(); ++x) {
    if (problem.p_x()[x] > 0.0) {
      theta[x] = DtildeOfU(Profile(with_prior, x), w);
    }
  }
  std::vector<double> g(problem.y_size());
  std::vector<double> terms(problem.x_size());
  for (int y = 0; y < problem.y_size(); ++y) {
    for (int x = 0; x < problem.x_size(); ++x) {
      terms[x] = problem.p_x()[x] * std::max(0.0, theta[x] - problem.d(x, y));
    }
    g[y] = -PairwiseSum(terms) / w;
  }
  return g;
}

PriorOptResult OptimizePrior(const Problem& problem, double rate,
                             const PriorOptConfig& config) {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument(fmt::format("R = {} must be >= 0", rate));
  }
  const double w = std::exp(-rate);
  const int ny = problem.y_size();

  std::vector<std::vector<double>> starts;
  starts.emplace_back(ny, 1.0 / ny);
  for (int s = 0; s < config.random_starts; ++s) {
    std::mt19937_64 gen = SeededStream(config.seed, s);
    starts.push_back(RandomSimplexPoint(gen, ny));
  }
  std::optional<StartResult> grid;
  if (ny <= config.grid_max_y) {
    grid = GridSearch(problem, w, config.grid_step);
    // Multiplicative steps never leave a face, so pull the grid point inside.
    std::vector<double> inner(grid->q);
    for (double& q : inner) q = (1.0 - kGridStartMix) * q + kGridStartMix / ny;
    starts.push_back(std::move(inner));
  }

  std::vector<StartResult> results(starts.size());
  if (config.parallel && starts.size() > 1) {
    std::vector<std::future<StartResult>> futures;
    for (const auto& start : starts) {
      futures.push_back(std::async(std::launch::async, Descend,
                                   std::cref(problem), w, start,
                                   config.iterations));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      results[i] = futures[i].get();
    }
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i) {
      results[i] = Descend(problem, w, starts[i], config.iterations);
    }
  }

  PriorOptResult out;
  out.iterations = config.iterations;
  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out.start_values.push_back(results[i].value);
    if (results[i].value < results[best].value) best = i;
  }
  out.descent_value = results[best].value;
  out.value = results[best].value;
  out.q_star = results[best].q;
  const auto [lo_it, hi_it] =
      std::minmax_element(out.start_values.begin(), out.start_values.end());
  out.certificate = "multistart";
  out.certificate_gap = *hi_it - *lo_it;

  if (grid) {
    out.grid_value = grid->value;
    if (grid->value < out.value) {
      out.value = grid->value;
      out.q_star = grid->q;
    }
    out.certificate = "grid";
    out.certificate_gap = out.descent_value - grid->value;
  }

  if (config.exact_polish) {
    double lower_bound = 0.0;
    if (auto lp =
            SolveJointLp(problem, w, config.max_lp_entries, &lower_bound)) {
      out.lp_value = lower_bound;
      if (lp->value < out.value) {
        out.value = lp->value;
        out.q_star = std::move(lp->q);
      }
      out.certificate = "lp";
      out.certificate_gap = out.value - lower_bound;
    }
  }
  return out;
}

std::vector<double> DefaultLambdaGrid(double rate, int count, double step) {
  std::vector<double> grid;
  for (int k = 1; k <= count; ++k) grid.push_back(rate - step * k);
  return grid;
}

SandwichResult DhatSandwich(const Problem& problem, double rate,
                            std::span<const double> lambda_grid,
                            const PriorOptConfig& config) {
  SandwichResult out;
  const PriorOptResult lower = OptimizePrior(problem, rate, config);
  out.lower = lower.value;
  out.q_star = lower.q_star;
  out.upper = std::numeric_limits<double>::infinity();
  for (double lambda : lambda_grid) {
    if (!(lambda < rate)) continue;
    const double candidate =
        OptimizePrior(problem, rate - lambda, config).value +
        problem.d_max_any_prior() * FOf(lambda);
    if (candidate < out.upper) {
      out.upper = candidate;
      out.best_lambda = lambda;
    }
  }
  return out;
}

}  // namespace oneshot
