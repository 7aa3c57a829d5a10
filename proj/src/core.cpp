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

#include "core.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace minnorm {

Instance::Instance(Matrix p) : p_(std::move(p)) {
  if (p_.rows() == 0 || p_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance needs at least one machine and one job");
  }
  integer_scaled_ = true;
  for (double v : p_.data()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "processing times must be finite and nonnegative");
    }
    if (v != std::floor(v)) integer_scaled_ = false;
    if (v > max_time_) max_time_ = v;
  }
  original_jobs_ = p_.cols();
}

void Assignment::validate(const Instance& inst) const {
  if (sigma_.size() != inst.jobs()) {
    throw Error(ErrorCode::kInvalidAssignment,
                "assignment covers " + std::to_string(sigma_.size()) +
                    " jobs, instance has " + std::to_string(inst.jobs()));
  }
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    if (sigma_[j] >= inst.machines()) {
      throw Error(ErrorCode::kInvalidAssignment,
                  "job " + std::to_string(j) + " mapped to machine " +
                      std::to_string(sigma_[j]) + " out of range");
    }
  }
}

Assignment Assignment::truncated(std::size_t jobs) const {
  if (jobs >= sigma_.size()) return *this;
  return Assignment(std::vector<std::size_t>(sigma_.begin(), sigma_.begin() + jobs));
}

FractionalAssignment FractionalAssignment::uniform(std::size_t m, std::size_t n) {
  return FractionalAssignment(Matrix(m, n, 1.0 / static_cast<double>(m)));
}

FractionalAssignment FractionalAssignment::from_assignment(const Assignment& a,
                                                           std::size_t m) {
  Matrix x(m, a.jobs());
  for (std::size_t j = 0; j < a.jobs(); ++j) x(a.machine(j), j) = 1.0;
  return FractionalAssignment(std::move(x));
}

bool FractionalAssignment::in_polytope(double tol) const {
  for (std::size_t j = 0; j < jobs(); ++j) {
    double mass = 0.0;
    for (std::size_t i = 0; i < machines(); ++i) {
      const double v = x_(i, j);
      if (!(v >= -tol && v <= 1.0 + tol)) return false;
      mass += v;
    }
    if (mass < 1.0 - tol) return false;
  }
  return true;
}

namespace {

void check_dims(const Instance& inst, const FractionalAssignment& x) {
  if (x.machines() != inst.machines() || x.jobs() != inst.jobs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "fractional assignment is " + std::to_string(x.machines()) + "x" +
                    std::to_string(x.jobs()) + ", instance is " +
                    std::to_string(inst.machines()) + "x" +
                    std::to_string(inst.jobs()));
  }
}

}  // namespace

LoadVector load_vector(const Instance& inst, const Assignment& a) {
  a.validate(inst);
  LoadVector loads(inst.machines(), 0.0);
  for (std::size_t j = 0; j < a.jobs(); ++j) {
    loads[a.machine(j)] += inst.p(a.machine(j), j);
  }
  return loads;
}

LoadVector fractional_loads(const Instance& inst, const FractionalAssignment& x) {
  check_dims(inst, x);
  LoadVector loads(inst.machines(), 0.0);
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < inst.jobs(); ++j) sum += inst.p(i, j) * x(i, j);
    loads[i] = sum;
  }
  return loads;
}

JobCostVector job_costs(const Instance& inst, const FractionalAssignment& x) {
  check_dims(inst, x);
  JobCostVector costs(inst.jobs(), 0.0);
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    for (std::size_t j = 0; j < inst.jobs(); ++j) costs[j] += inst.p(i, j) * x(i, j);
  }
  return costs;
}

Instance pad_jobs(const Instance& inst) {
  const std::size_t m = inst.machines();
  const std::size_t n = inst.jobs();
  if (n >= m) return inst;
  Matrix p(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p(i, j) = inst.p(i, j);
  }
  Instance padded(std::move(p));
  padded.original_jobs_ = inst.original_jobs();
  return padded;
}

std::optional<Assignment> zero_opt_check(const Instance& inst) {
  std::vector<std::size_t> sigma(inst.jobs());
  for (std::size_t j = 0; j < inst.jobs(); ++j) {
    bool found = false;
    for (std::size_t i = 0; i < inst.machines() && !found; ++i) {
      if (inst.p(i, j) == 0.0) {
        sigma[j] = i;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return Assignment(std::move(sigma));
}

Instance scale_to_integer_grid(const Instance& inst, int decimals) {
  if (decimals < 0 || decimals > 15) {
    throw Error(ErrorCode::kInvalidArgument, "decimal scale out of range [0, 15]");
  }
  const double factor = std::pow(10.0, decimals);
  Matrix p = inst.times();
  for (double& v : p.data()) v = std::round(v * factor);
  return Instance(std::move(p));
}

}  // namespace minnorm
