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

#ifndef ONESHOT_RANDOM_H_
#define ONESHOT_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace oneshot {

// Generator for substream `stream` of `seed`. Output depends only on the
// pair, so work can be split across threads in any order.
std::mt19937_64 SeededStream(std::uint64_t seed, std::uint64_t stream);

// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double UniformUnit(std::mt19937_64& gen);

// Uniform point on the probability simplex of dimension n.
std::vector<double> RandomSimplexPoint(std::mt19937_64& gen, int n);

}  // namespace oneshot

#endif  // ONESHOT_RANDOM_H_
