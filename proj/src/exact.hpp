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

#ifndef MINNORM_EXACT_HPP_
#define MINNORM_EXACT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "core.hpp"
#include "norms.hpp"

namespace minnorm {

inline constexpr std::uint64_t kDefaultEnumerationCap = 20'000'000;

// m^n, saturating at UINT64_MAX.
std::uint64_t assignment_count(std::size_t machines, std::size_t jobs);

// Calls visit(sigma, loads) for every assignment of the instance's original
// jobs, in lexicographic order of sigma. Throws Error(kCapExceeded) when
// m^n > cap.
void for_each_assignment(
    const Instance& inst, std::uint64_t cap,
    const std::function<void(const std::vector<std::size_t>&, const LoadVector&)>& visit);

struct BruteResult {
  double value = 0.0;
  Assignment assignment;  // lexicographically first optimum
  std::uint64_t enumerated = 0;
};

BruteResult brute_min_norm(const Instance& inst, const NormOracle& norm,
                           std::uint64_t cap = kDefaultEnumerationCap);

// OPT_l for l = 1..m (entry l - 1).
std::vector<double> brute_topl_table(const Instance& inst,
                                     std::uint64_t cap = kDefaultEnumerationCap);

// max_l top_l(loads) / OPT_l, with 0/0 read as 1 and x/0 as infinity.
double topl_ratio(const LoadVector& loads, const std::vector<double>& opt_topl);

struct SimulFactor {
  double alpha = 1.0;
  Assignment witness;
  std::vector<double> opt_topl;
  std::uint64_t enumerated = 0;
};

// Best simultaneous factor over all monotone symmetric norms; the top-l family
// decides it since every such norm ratio is dominated by the worst top-l ratio.
SimulFactor brute_simul_factor(const Instance& inst,
                               std::uint64_t cap = kDefaultEnumerationCap);

struct ValidityCheck {
  bool valid = false;
  double relaxation_value = 0.0;  // g at the indicator of the brute optimum
  double optimum = 0.0;
};

// Evaluates the relaxation objective at the brute-force optimum; valid when it
// does not exceed the optimum by more than 1e-9.
ValidityCheck check_cp_validity(const Instance& inst, std::shared_ptr<const NormOracle> norm,
                                std::uint64_t cap = kDefaultEnumerationCap);

// Walks from the job-cost vector P_S (P_j = p(sigma(j), j), |S| = m) to the
// S-restricted load vector by merging coordinates of jobs that share a
// machine, and checks that the norm never decreases along the way and that
// the end point is a permutation of the restricted loads.
bool merge_chain_holds(const Instance& inst, const NormOracle& norm,
                       const std::vector<std::size_t>& subset, const Assignment& sigma,
                       double tol = 1e-9);

}  // namespace minnorm

#endif  // MINNORM_EXACT_HPP_
