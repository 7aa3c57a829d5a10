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

#ifndef MINNORM_SIMUL_HPP_
#define MINNORM_SIMUL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "core.hpp"
#include "cp.hpp"
#include "multinorm.hpp"

namespace minnorm {

// Sorted distinct values min(ceil((1 + eps)^s), m) for s >= 0.
std::vector<std::size_t> pos_set(std::size_t m, double eps);

// One guess per POS index, stored as grid exponents over per-index anchors:
// guess_k = anchor_k (1 + eps)^exponent_k.
struct GuessVector {
  std::vector<int> exponents;
  std::vector<double> values;
};

inline constexpr std::size_t kMaxGuesses = 200'000;

// All grid vectors with lower[k] (1 + eps)^t in [lower[k], upper[k] (1 + eps))
// per index, keeping those consistent with monotonicity and subadditivity of
// the OPT_l profile up to one (1 + eps) step. `pos` holds the l values.
// Throws Error(kCapExceeded) past kMaxGuesses vectors.
std::vector<GuessVector> enumerate_guesses(const std::vector<std::size_t>& pos, double eps,
                                           const std::vector<double>& lower,
                                           const std::vector<double>& upper);

// Window [lower, 4 (1 + eps) lower] per index.
std::vector<GuessVector> enumerate_guesses(const std::vector<std::size_t>& pos, double eps,
                                           const std::vector<double>& lower);

struct AlphaProbe {
  std::size_t guess = 0;
  int alpha_exponent = 0;  // alpha = (1 + eps)^alpha_exponent
  MultiStatus status = MultiStatus::kUnresolved;
};

struct SimulResult {
  MultiStatus status = MultiStatus::kUnresolved;
  Assignment sigma;  // original job indexing
  LoadVector loads;
  std::vector<std::size_t> pos;
  std::vector<double> lower;  // certified LB_l per POS index
  std::vector<double> upper;  // UB_l per POS index, achieved by some rounding
  double pos_factor = 0.0;    // max over POS of top_l(loads) / LB_l
  double certified = 0.0;     // pos_factor times (1 + eps) when POS != [m]
  std::size_t guesses = 0;
  std::size_t solves = 0;     // distinct multi-norm solves
  std::vector<AlphaProbe> probes;
};

// Top-l budgets alpha * guess_l for l in POS, searched over alpha in
// (1 + eps)^a, a = 0..ceil(log_{1+eps} 4m(1 + eps)).
SimulResult simul_schedule(const Instance& inst, const SolveConfig& cfg);

}  // namespace minnorm

#endif  // MINNORM_SIMUL_HPP_
