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

#ifndef MINNORM_ROUNDING_HPP_
#define MINNORM_ROUNDING_HPP_

#include <cstddef>
#include <vector>

#include "core.hpp"
#include "cp.hpp"
#include "norms.hpp"

namespace minnorm {

struct FilteredAssignment {
  Matrix xhat;                                    // columns sum to 1
  std::vector<std::vector<std::size_t>> support;  // machines with xhat > 0, per job
};

// Keeps x(i, j) (doubled) only where p(i, j) <= 2 P_j, then rescales each job
// column to total mass exactly 1. Throws Error(kNumerical) if a column loses
// all of its mass, which cannot happen for x inside the polytope.
FilteredAssignment filter(const Instance& inst, const FractionalAssignment& x,
                          const JobCostVector& costs);

// Shmoys-Tardos rounding of a filtered solution. Every machine i receives
// ceil(sum_j xhat(i, j)) unit slots filled in order of nonincreasing p(i, j);
// the resulting job/slot fractional matching is made integral by canceling
// alternating cycles and paths on its support. Jobs land only on machines in
// their support and each machine satisfies
//   load(i) <= sum_j p(i, j) xhat(i, j) + max{ p(i, j) : sigma(j) = i }.
Assignment gap_round(const Instance& inst, const FilteredAssignment& filtered);

struct RoundingResult {
  Assignment sigma;
  FilteredAssignment filtered;
  LoadVector loads;
};

// filter followed by gap_round. Uses only x and p, never a norm, so the same
// assignment carries the factor-4 guarantee for every monotone symmetric norm.
RoundingResult round_oblivious(const Instance& inst, const FractionalAssignment& x);

struct RoundedSchedule {
  RoundingResult rounding;
  double value = 0.0;  // norm of the rounded load vector
};

RoundedSchedule round_solution(const Instance& inst, const CpSolution& sol,
                               const NormOracle& norm);

// Per-machine sides of the rounding guarantee for a given outcome.
struct MachineBound {
  double load = 0.0;        // load_sigma(i)
  double fractional = 0.0;  // sum_j p(i, j) xhat(i, j)
  double largest = 0.0;     // Z_i
};
std::vector<MachineBound> machine_bounds(const Instance& inst, const Matrix& xhat,
                                         const Assignment& sigma);

}  // namespace minnorm

#endif  // MINNORM_ROUNDING_HPP_
