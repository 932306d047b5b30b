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

#include "simplex_lp.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oneshot::internal {

namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kReducedCostTolerance = 1e-11;
constexpr double kFeasibilityTolerance = 1e-9;
constexpr int kMaxPivots = 200000;

class Tableau {
 public:
  Tableau(const Matrix& a, std::span<const double> b)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), t_(m_ + 1, width_) {
    for (int i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) t_(i, j) = sign * a(i, j);
      t_(i, n_ + i) = 1.0;
      t_(i, width_ - 1) = sign * b[i];
      basis_.push_back(n_ + i);
    }
  }

  // Loads reduced costs for cost vector `cost` (length n_ + m_).
  void SetObjective(std::span<const double> cost) {
    for (int j = 0; j < width_; ++j) {
      double v = j < width_ - 1 ? cost[j] : 0.0;
      for (int i = 0; i < m_; ++i) v -= cost[basis_[i]] * t_(i, j);
      t_(m_, j) = v;
    }
  }

  // Runs simplex iterations over columns [0, allowed). Returns kOptimal,
  // kUnbounded or kIterationLimit.
  LpStatus Optimize(int allowed) {
    for (int pivots = 0; pivots < kMaxPivots; ++pivots) {
      int entering = -1;
      for (int j = 0; j < allowed; ++j) {
        if (t_(m_, j) < -kReducedCostTolerance) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;
      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double coef = t_(i, entering);
        if (coef <= kPivotTolerance) continue;
        const double ratio = t_(i, width_ - 1) / coef;
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis_[i] < basis_[leaving])) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return LpStatus::kUnbounded;
      Pivot(leaving, entering);
    }
    return LpStatus::kIterationLimit;
  }

  // Moves artificial columns (index >= n_) out of the basis where possible.
  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > kPivotTolerance) {
          Pivot(i, j);
          break;
        }
      }
    }
  }

  double Objective() const { return -t_(m_, width_ - 1); }

  std::vector<double> Solution() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_(i, width_ - 1);
    }
    return x;
  }

  int n() const { return n_; }
  int m() const { return m_; }

 private:
  void Pivot(int row, int col) {
    const double inv = 1.0 / t_(row, col);
    for (int j = 0; j < width_; ++j) t_(row, j) *= inv;
    t_(row, col) = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor == 0.0) continue;
      for (int j = 0; j < width_; ++j) t_(i, j) -= factor * t_(row, j);
      t_(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  int m_;
  int n_;
  int width_;
  Matrix t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult SolveStandardFormLp(const Matrix& a, std::span<const double> b,
                             std::span<const double> c) {
  if (static_cast<int>(b.size()) != a.rows() ||
      static_cast<int>(c.size()) != a.cols()) {
    throw std::invalid_argument("LP dimensions do not match");
  }
  Tableau tableau(a, b);
  const int n = tableau.n();
  const int m = tableau.m();

  std::vector<double> phase1(n + m, 0.0);
  for (int j = n; j < n + m; ++j) phase1[j] = 1.0;
  tableau.SetObjective(phase1);
  LpResult result;
  result.status = tableau.Optimize(n);
  if (result.status == LpStatus::kIterationLimit) return result;
  if (tableau.Objective() > kFeasibilityTolerance) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  tableau.DriveOutArtificials();

  std::vector<double> phase2(n + m, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  tableau.SetObjective(phase2);
  result.status = tableau.Optimize(n);
  result.x = tableau.Solution();
  double objective = 0.0;
  for (int j = 0; j < n; ++j) objective += c[j] * result.x[j];
  result.objective = objective;
  return result;
}

}  // namespace oneshot::internal
