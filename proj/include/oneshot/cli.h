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

// Command-line front end and the product-alphabet prior experiment.

#ifndef ONESHOT_CLI_H_
#define ONESHOT_CLI_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "oneshot/converse.h"
#include "oneshot/model.h"

namespace oneshot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitAssertion = 2;

inline constexpr std::int64_t kDefaultProductCap = 4096;

// The n-fold product problem: P_X^n, Q_Y^n and the per-letter average of
// d. Throws ValidationError if |X|^n or |Y|^n exceeds cap.
Problem ProductProblem(const Problem& base, int n,
                       std::int64_t cap = kDefaultProductCap);

// Q^{(x)n} over lexicographically ordered tuples, last letter fastest.
std::vector<double> ProductPrior(std::span<const double> q, int n);

struct ProductPriorReport {
  int n = 0;
  double rate = 0.0;           // per letter
  double w = 0.0;              // e^{-nR}
  double product_value = 0.0;  // min over single-letter Q of D(w, Q^n)
  double full_value = 0.0;     // min over the full product simplex
  double gap = 0.0;            // product_value - full_value
  std::vector<double> product_q;
  std::vector<double> full_q;
};

// For n = 1 both values come from the same optimization, so gap = 0.
ProductPriorReport ProductPriorExperiment(const Problem& base, int n,
                                          double rate,
                                          std::int64_t cap = kDefaultProductCap,
                                          const PriorOptConfig& config = {});

// Runs one subcommand. Exit status 0 on success, 1 on bad input and 2 when
// a checked identity fails.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace oneshot

#endif  // ONESHOT_CLI_H_
