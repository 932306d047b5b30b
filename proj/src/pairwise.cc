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

#include "oneshot/pairwise.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fmt/format.h"

namespace oneshot {

namespace {

void CheckUnit(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(fmt::format("{} = {} outside [0, 1]", name, v));
  }
}

void CheckIndices(const Problem& problem, int x, int y) {
  if (x < 0 || x >= problem.x_size()) {
    throw std::out_of_range(fmt::format("x index {} out of range", x));
  }
  if (y < 0 || y >= problem.y_size()) {
    throw std::out_of_range(fmt::format("y index {} out of range", y));
  }
}

}  // namespace

int DistortionProfile::LevelIndexFor(double u) const {
  // cumulative[1..k] is nondecreasing; find the first entry >= u.
  const auto it = std::lower_bound(cumulative.begin() + 1, cumulative.end(), u);
  if (it == cumulative.end()) return size() - 1;
  return static_cast<int>(it - cumulative.begin()) - 1;
}

int DistortionProfile::LevelIndexOf(double value) const {
  const auto it = std::lower_bound(levels.begin(), levels.end(), value);
  if (it == levels.end() || *it != value) return -1;
  return static_cast<int>(it - levels.begin());
}

double DistortionProfile::MassBelow(double value) const {
  const auto it = std::lower_bound(levels.begin(), levels.end(), value);
  return cumulative[it - levels.begin()];
}

DistortionProfile Profile(const Problem& problem, int x) {
  if (x < 0 || x >= problem.x_size()) {
    throw std::out_of_range(fmt::format("x index {} out of range", x));
  }
  std::vector<int> support;
  for (int y = 0; y < problem.y_size(); ++y) {
    if (problem.q_y()[y] > 0.0) support.push_back(y);
  }
  if (support.empty()) throw std::invalid_argument("supp(q_y) is empty");
  std::stable_sort(support.begin(), support.end(), [&](int a, int b) {
    return problem.d(x, a) < problem.d(x, b);
  });

  DistortionProfile profile;
  profile.cumulative.push_back(0.0);
  std::vector<double> tied;
  for (std::size_t i = 0; i < support.size();) {
    const double level = problem.d(x, support[i]);
    tied.clear();
    for (; i < support.size() && problem.d(x, support[i]) == level; ++i) {
      tied.push_back(problem.q_y()[support[i]]);
    }
    const double mass = PairwiseSum(tied);
    profile.levels.push_back(level);
    profile.masses.push_back(mass);
    profile.cumulative.push_back(profile.cumulative.back() + mass);
  }
  return profile;
}

double PairwiseCorrect(const Problem& problem, int x, int y, double u) {
  CheckIndices(problem, x, y);
  CheckUnit("u", u);
  const DistortionProfile profile = Profile(problem, x);
  const double value = problem.d(x, y);
  const int j = profile.LevelIndexOf(value);
  if (j < 0) return profile.MassBelow(value);
  return profile.cumulative[j] + u * profile.masses[j];
}

double ProbPairwiseCorrectAtMost(const Problem& problem, int x, int y,
                                 double w) {
  CheckIndices(problem, x, y);
  const DistortionProfile profile = Profile(problem, x);
  const double value = problem.d(x, y);
  const int j = profile.LevelIndexOf(value);
  if (j < 0) return profile.MassBelow(value) <= w ? 1.0 : 0.0;
  return std::clamp((w - profile.cumulative[j]) / profile.masses[j], 0.0, 1.0);
}

Level FindLevel(const Problem& problem, int x, double w) {
  CheckUnit("w", w);
  const DistortionProfile profile = Profile(problem, x);
  const int j = profile.LevelIndexFor(w);
  Level level;
  level.tau =
      std::clamp((w - profile.cumulative[j]) / profile.masses[j], 0.0, 1.0);
  for (int y = 0; y < problem.y_size(); ++y) {
    if (problem.q_y()[y] > 0.0 && problem.d(x, y) == profile.levels[j]) {
      level.y = y;
      break;
    }
  }
  return level;
}

double DtildeOfU(const DistortionProfile& profile, double u) {
  CheckUnit("u", u);
  return profile.levels[profile.LevelIndexFor(u)];
}

double DtildeOfU(const Problem& problem, int x, double u) {
  return DtildeOfU(Profile(problem, x), u);
}

double PcCdf(const Problem& problem, int x, double w) {
  CheckUnit("w", w);
  const DistortionProfile profile = Profile(problem, x);
  // Each level contributes q_j * clamp((w - F_{j-1}) / q_j, 0, 1).
  std::vector<double> terms(profile.size());
  for (int j = 0; j < profile.size(); ++j) {
    terms[j] = std::clamp(w - profile.cumulative[j], 0.0, profile.masses[j]);
  }
  return PairwiseSum(terms);
}

}  // namespace oneshot
