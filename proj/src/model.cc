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

#include "oneshot/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fmt/format.h"
#include "json.hpp"

namespace oneshot {

namespace {

constexpr std::size_t kPairwiseBlock = 8;

void ValidateProbabilityVector(const std::string& name,
                               const std::vector<double>& v) {
  if (v.empty()) throw ValidationError(name, fmt::format("{} is empty", name));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw ValidationError(name, fmt::format("{}[{}] is not finite", name, i));
    }
    if (v[i] < 0.0) {
      throw ValidationError(
          name, fmt::format("{}[{}] is negative ({})", name, i, v[i]));
    }
  }
  const double sum = PairwiseSum(v);
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw ValidationError(name, fmt::format("{} sums to {}", name, sum));
  }
}

double MaxOver(const ProblemData& data, bool restrict_to_prior_support) {
  double best = 0.0;
  for (int x = 0; x < data.d.rows(); ++x) {
    if (data.p_x[x] <= 0.0) continue;
    for (int y = 0; y < data.d.cols(); ++y) {
      if (restrict_to_prior_support && data.q_y[y] <= 0.0) continue;
      best = std::max(best, data.d(x, y));
    }
  }
  return best;
}

std::vector<double> ReadVector(const nlohmann::json& j, const char* key) {
  if (!j.is_array()) {
    throw ValidationError(key, fmt::format("{} must be an array", key));
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ValidationError(key, fmt::format("{} must contain numbers", key));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> ReadLabels(const nlohmann::json& j, const char* key) {
  if (!j.is_array()) {
    throw ValidationError(key, fmt::format("{} must be an array", key));
  }
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) {
      throw ValidationError(key, fmt::format("{} must contain strings", key));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Rescales `v` to unit sum when it is already within the loader tolerance.
void Normalize(std::vector<double>& v) {
  const double sum = PairwiseSum(v);
  if (sum > 0.0 && std::abs(sum - 1.0) <= kNormalizationTolerance) {
    for (double& e : v) e /= sum;
  }
}

int LineOfOffset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

}  // namespace

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("matrix dimensions must be nonnegative");
  }
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) {
      throw std::invalid_argument(fmt::format(
          "row {} has {} entries, expected {}", i, rows[i].size(), c));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

void Validate(const ProblemData& data) {
  ValidateProbabilityVector("p_x", data.p_x);
  ValidateProbabilityVector("q_y", data.q_y);
  const int xs = static_cast<int>(data.p_x.size());
  const int ys = static_cast<int>(data.q_y.size());
  if (data.d.rows() != xs || data.d.cols() != ys) {
    throw ValidationError(
        "d", fmt::format("d has shape {}x{}, expected {}x{}", data.d.rows(),
                         data.d.cols(), xs, ys));
  }
  for (int x = 0; x < xs; ++x) {
    for (int y = 0; y < ys; ++y) {
      const double v = data.d(x, y);
      if (!std::isfinite(v)) {
        throw ValidationError(
            "d", fmt::format("non-finite distortion at d[{}][{}]", x, y));
      }
      if (v < 0.0) {
        throw ValidationError(
            "d", fmt::format("negative distortion at d[{}][{}] ({})", x, y, v));
      }
    }
  }
  if (!data.x_labels.empty() && static_cast<int>(data.x_labels.size()) != xs) {
    throw ValidationError("x_labels",
                          fmt::format("x_labels has {} entries, expected {}",
                                      data.x_labels.size(), xs));
  }
  if (!data.y_labels.empty() && static_cast<int>(data.y_labels.size()) != ys) {
    throw ValidationError("y_labels",
                          fmt::format("y_labels has {} entries, expected {}",
                                      data.y_labels.size(), ys));
  }
}

Problem::Problem(ProblemData data) : data_(std::move(data)) {
  Validate(data_);
  d_max_ = MaxOver(data_, /*restrict_to_prior_support=*/true);
  d_max_any_prior_ = MaxOver(data_, /*restrict_to_prior_support=*/false);
}

Problem::Problem(std::vector<double> p_x, std::vector<double> q_y, Matrix d)
    : Problem(
          ProblemData{std::move(p_x), std::move(q_y), std::move(d), {}, {}}) {}

Problem Problem::WithPrior(std::vector<double> q_y) const {
  ProblemData copy = data_;
  copy.q_y = std::move(q_y);
  return Problem(std::move(copy));
}

Problem Problem::WithDistortion(Matrix d) const {
  ProblemData copy = data_;
  copy.d = std::move(d);
  return Problem(std::move(copy));
}

void ValidateCode(const Problem& problem, const Code& code) {
  if (code.members.empty()) throw ValidationError("code", "empty code");
  for (int y : code.members) {
    if (y < 0 || y >= problem.y_size()) {
      throw ValidationError("code", fmt::format("codeword {} outside [0, {})",
                                                y, problem.y_size()));
    }
  }
}

Code ParseCode(const std::string& text) {
  Code code;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument(fmt::format("bad codeword '{}'", token));
    }
    code.members.push_back(v);
  }
  return code;
}

Channel::Channel(Matrix w, double tolerance) : w_(std::move(w)) {
  for (int x = 0; x < w_.rows(); ++x) {
    for (double v : w_.row(x)) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError(
            "channel", fmt::format("row {} has an invalid entry {}", x, v));
      }
    }
    const double sum = PairwiseSum(w_.row(x));
    if (std::abs(sum - 1.0) > tolerance) {
      throw ValidationError("channel",
                            fmt::format("row {} sums to {}", x, sum));
    }
  }
}

double ExpectedDistortion(const Problem& problem, const Channel& channel) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(problem.x_size()) * problem.y_size());
  for (int x = 0; x < problem.x_size(); ++x) {
    for (int y = 0; y < problem.y_size(); ++y) {
      terms.push_back(problem.p_x()[x] * channel(x, y) * problem.d(x, y));
    }
  }
  return PairwiseSum(terms);
}

Matrix JointDistribution(std::span<const double> p_x, const Channel& channel) {
  Matrix joint(channel.x_size(), channel.y_size());
  for (int x = 0; x < channel.x_size(); ++x) {
    for (int y = 0; y < channel.y_size(); ++y) {
      joint(x, y) = p_x[x] * channel(x, y);
    }
  }
  return joint;
}

Problem ParseProblemJson(const std::string& text,
                         const std::string& source_name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("json",
                          fmt::format("{}:{}: parse error: {}", source_name,
                                      LineOfOffset(text, e.byte), e.what()));
  }
  if (!j.is_object()) {
    throw ValidationError(
        "json",
        fmt::format("{}: top-level value must be an object", source_name));
  }
  static const std::set<std::string> kKnown = {"p_x", "q_y", "d", "x_labels",
                                               "y_labels"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.contains(key)) {
      throw ValidationError(
          key, fmt::format("{}: unknown key '{}'", source_name, key));
    }
  }
  for (const char* key : {"p_x", "q_y", "d"}) {
    if (!j.contains(key)) {
      throw ValidationError(
          key, fmt::format("{}: missing key '{}'", source_name, key));
    }
  }

  try {
    ProblemData data;
    data.p_x = ReadVector(j["p_x"], "p_x");
    data.q_y = ReadVector(j["q_y"], "q_y");
    if (!j["d"].is_array()) throw ValidationError("d", "d must be an array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : j["d"]) rows.push_back(ReadVector(r, "d"));
    const std::size_t ys = data.q_y.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != ys) {
        throw ValidationError(
            "d", fmt::format("d row {} has {} entries, expected {}", i,
                             rows[i].size(), ys));
      }
    }
    if (rows.size() != data.p_x.size()) {
      throw ValidationError("d", fmt::format("d has {} rows, expected {}",
                                             rows.size(), data.p_x.size()));
    }
    data.d =
        rows.empty() ? Matrix(0, static_cast<int>(ys)) : Matrix::FromRows(rows);
    if (j.contains("x_labels")) {
      data.x_labels = ReadLabels(j["x_labels"], "x_labels");
    }
    if (j.contains("y_labels")) {
      data.y_labels = ReadLabels(j["y_labels"], "y_labels");
    }

    // Sign and finiteness errors take precedence over the sum check.
    for (std::vector<double>* v : {&data.p_x, &data.q_y}) {
      if (std::all_of(v->begin(), v->end(),
                      [](double e) { return std::isfinite(e) && e >= 0.0; })) {
        Normalize(*v);
      }
    }
    return Problem(std::move(data));
  } catch (const ValidationError& e) {
    throw ValidationError(e.field(),
                          fmt::format("{}: {}", source_name, e.what()));
  }
}

Problem LoadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("problem", fmt::format("cannot open {}", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseProblemJson(buffer.str(), path);
}

std::string EmitProblemJson(const Problem& problem) {
  nlohmann::json j;
  j["p_x"] = problem.p_x();
  j["q_y"] = problem.q_y();
  j["d"] = problem.d().ToRows();
  if (!problem.x_labels().empty()) j["x_labels"] = problem.x_labels();
  if (!problem.y_labels().empty()) j["y_labels"] = problem.y_labels();
  return j.dump(2);
}

}  // namespace oneshot
