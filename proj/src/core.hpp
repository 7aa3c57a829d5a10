// Copyright 2026 The minnorm Authors
//
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

#ifndef MINNORM_CORE_HPP_
#define MINNORM_CORE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace minnorm {

// Membership tolerance for the assignment polytope.
inline constexpr double kFeasTol = 1e-9;

// Dense row-major matrix. Rows are machines, columns are jobs throughout.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using LoadVector = std::vector<double>;
using JobCostVector = std::vector<double>;

// Unrelated-machines instance: p(i, j) is the processing time of job j on
// machine i. Immutable after construction.
class Instance {
 public:
  // Throws Error(kInvalidArgument) unless p is at least 1x1 with finite,
  // nonnegative entries.
  explicit Instance(Matrix p);

  std::size_t machines() const { return p_.rows(); }
  std::size_t jobs() const { return p_.cols(); }
  double p(std::size_t i, std::size_t j) const { return p_(i, j); }
  const Matrix& times() const { return p_; }

  // Job count before pad_jobs appended dummy columns.
  std::size_t original_jobs() const { return original_jobs_; }
  bool padded() const { return original_jobs_ != jobs(); }

  // True when every entry is an integer.
  bool integer_scaled() const { return integer_scaled_; }
  double max_time() const { return max_time_; }

  bool operator==(const Instance& other) const { return p_ == other.p_; }

 private:
  friend Instance pad_jobs(const Instance& inst);

  Matrix p_;
  std::size_t original_jobs_ = 0;
  bool integer_scaled_ = false;
  double max_time_ = 0.0;
};

// Total map job -> machine.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)) {}

  std::size_t jobs() const { return sigma_.size(); }
  std::size_t machine(std::size_t job) const { return sigma_[job]; }
  const std::vector<std::size_t>& machines() const { return sigma_; }

  // Throws Error(kInvalidAssignment) when sizes or indices do not fit inst.
  void validate(const Instance& inst) const;

  // Restriction to the first `jobs` jobs (drops padding).
  Assignment truncated(std::size_t jobs) const;

  auto operator<=>(const Assignment&) const = default;

 private:
  std::vector<std::size_t> sigma_;
};

// A point of the polytope {x in [0,1]^{m x n} : sum_i x(i, j) >= 1}.
class FractionalAssignment {
 public:
  FractionalAssignment() = default;
  explicit FractionalAssignment(Matrix x) : x_(std::move(x)) {}

  static FractionalAssignment uniform(std::size_t m, std::size_t n);
  static FractionalAssignment from_assignment(const Assignment& a, std::size_t m);

  std::size_t machines() const { return x_.rows(); }
  std::size_t jobs() const { return x_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return x_(i, j); }
  double& operator()(std::size_t i, std::size_t j) { return x_(i, j); }
  const Matrix& matrix() const { return x_; }
  Matrix& matrix() { return x_; }

  bool in_polytope(double tol = kFeasTol) const;

  bool operator==(const FractionalAssignment&) const = default;

 private:
  Matrix x_;
};

LoadVector load_vector(const Instance& inst, const Assignment& a);
LoadVector fractional_loads(const Instance& inst, const FractionalAssignment& x);
JobCostVector job_costs(const Instance& inst, const FractionalAssignment& x);

// Appends zero columns until jobs() >= machines(). Identity when already so.
Instance pad_jobs(const Instance& inst);

// An assignment with an all-zero load vector, if one exists.
std::optional<Assignment> zero_opt_check(const Instance& inst);

// Multiplies every entry by 10^decimals and rounds to the nearest integer.
// Returns the scaled instance; the scale factor is 10^decimals.
Instance scale_to_integer_grid(const Instance& inst, int decimals);

}  // namespace minnorm

#endif  // MINNORM_CORE_HPP_
