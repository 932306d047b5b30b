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

// Core data for a finite-alphabet lossy source coding problem: the source
// distribution, the reproduction prior, and the distortion matrix.

#ifndef ONESHOT_MODEL_H_
#define ONESHOT_MODEL_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oneshot {

// Absolute tolerance on probability-vector sums accepted by Validate().
inline constexpr double kProbabilityTolerance = 1e-12;
// Loaders rescale vectors whose sum deviates from 1 by at most this much.
inline constexpr double kNormalizationTolerance = 1e-9;

// Raised when problem data violates an invariant. field() names the offending
// field ("p_x", "q_y", "d", "x_labels", "y_labels", "code", "channel", or
// "json" and "problem" for file-level errors).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Tree summation; the result depends only on the order of `values`.
double PairwiseSum(std::span<const double> values);

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }
  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<double> row(int r) {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<const double> data() const { return data_; }
  std::vector<std::vector<double>> ToRows() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Raw, unvalidated problem contents as read from a file or built in code.
struct ProblemData {
  std::vector<double> p_x;
  std::vector<double> q_y;
  Matrix d;
  std::vector<std::string> x_labels;
  std::vector<std::string> y_labels;
};

// Throws ValidationError describing the first violated invariant.
void Validate(const ProblemData& data);

// A validated problem. Immutable; safe to share across threads.
class Problem {
 public:
  // Validates `data` and throws ValidationError on failure.
  explicit Problem(ProblemData data);
  Problem(std::vector<double> p_x, std::vector<double> q_y, Matrix d);

  int x_size() const { return static_cast<int>(data_.p_x.size()); }
  int y_size() const { return static_cast<int>(data_.q_y.size()); }
  const std::vector<double>& p_x() const { return data_.p_x; }
  const std::vector<double>& q_y() const { return data_.q_y; }
  const Matrix& d() const { return data_.d; }
  double d(int x, int y) const { return data_.d(x, y); }
  const std::vector<std::string>& x_labels() const { return data_.x_labels; }
  const std::vector<std::string>& y_labels() const { return data_.y_labels; }
  const ProblemData& data() const { return data_; }

  // Max of d over supp(p_x) x supp(q_y).
  double d_max() const { return d_max_; }
  // Max of d over supp(p_x) x Y; bounds d_max() for every prior.
  double d_max_any_prior() const { return d_max_any_prior_; }

  // Same source and distortion with the reproduction prior replaced.
  Problem WithPrior(std::vector<double> q_y) const;
  // Same distributions with the distortion matrix replaced.
  Problem WithDistortion(Matrix d) const;

 private:
  ProblemData data_;
  double d_max_ = 0.0;
  double d_max_any_prior_ = 0.0;
};

// A multiset of reproduction indices. Repeats are allowed.
struct Code {
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
};

// Throws ValidationError unless the code is nonempty and indexes into Y.
void ValidateCode(const Problem& problem, const Code& code);

// Parses "0,1,1" into a Code. Throws std::invalid_argument on bad tokens.
Code ParseCode(const std::string& text);

// Row-stochastic conditional distribution W(y|x).
class Channel {
 public:
  // Throws ValidationError if any entry is negative or non-finite, or a row
  // sum differs from 1 by more than `tolerance`.
  explicit Channel(Matrix w, double tolerance = kProbabilityTolerance);

  int x_size() const { return w_.rows(); }
  int y_size() const { return w_.cols(); }
  double operator()(int x, int y) const { return w_(x, y); }
  const Matrix& matrix() const { return w_; }

 private:
  Matrix w_;
};

// E_{P_X x W}[d(X,Y)].
double ExpectedDistortion(const Problem& problem, const Channel& channel);

// Joint distribution P_X(x) W(y|x).
Matrix JointDistribution(std::span<const double> p_x, const Channel& channel);

// Parses the JSON problem format. Vectors whose sum is within
// kNormalizationTolerance of 1 are rescaled to sum to 1; everything else is
// validated. Throws ValidationError; syntax errors carry the source name and
// line as "name:line:".
Problem ParseProblemJson(const std::string& text,
                         const std::string& source_name = "<string>");
Problem LoadProblem(const std::string& path);

// Serializes in the same JSON format; doubles round-trip exactly.
std::string EmitProblemJson(const Problem& problem);

}  // namespace oneshot

#endif  // ONESHOT_MODEL_H_
