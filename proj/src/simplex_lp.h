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

// Dense two-phase tableau simplex for small standard-form programs
//   min c.x  s.t.  A x = b,  x >= 0.
// Bland's rule; intended for a few hundred rows at most.

#ifndef ONESHOT_SIMPLEX_LP_H_
#define ONESHOT_SIMPLEX_LP_H_

#include <span>
#include <vector>

#include "oneshot/model.h"

namespace oneshot::internal {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult SolveStandardFormLp(const Matrix& a, std::span<const double> b,
                             std::span<const double> c);

}  // namespace oneshot::internal

#endif  // ONESHOT_SIMPLEX_LP_H_
