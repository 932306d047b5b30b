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

#include "oneshot/random.h"

#include <cmath>

#include "oneshot/model.h"

namespace oneshot {

namespace {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::mt19937_64 SeededStream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t key = Mix64(Mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                                  (stream + 0x632be59bd9b4e019ULL));
  return std::mt19937_64(key);
}

double UniformUnit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::vector<double> RandomSimplexPoint(std::mt19937_64& gen, int n) {
  std::vector<double> v(n);
  for (double& e : v) e = -std::log1p(-UniformUnit(gen));
  const double sum = PairwiseSum(v);
  for (double& e : v) e /= sum;
  return v;
}

}  // namespace oneshot
