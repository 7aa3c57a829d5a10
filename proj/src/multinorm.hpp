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

#ifndef MINNORM_MULTINORM_HPP_
#define MINNORM_MULTINORM_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "cp.hpp"
#include "norms.hpp"
#include "rounding.hpp"

namespace minnorm {

// Largest omega accepted by the multi-norm solver.
inline constexpr double kMaxMultiOmega = 1.0 / 18.0;

struct BudgetedNorm {
  std::shared_ptr<const NormOracle> norm;
  double budget = 0.0;
};
using BudgetedNorms = std::vector<BudgetedNorm>;

enum class MultiStatus { kFeasible, kInfeasible, kUnresolved };

const char* to_string(MultiStatus s);

struct BudgetCheck {
  bool ok = true;
  std::size_t failing = 0;              // first offending norm when !ok
  std::vector<double> norm_lipschitz;   // K_r per norm
};

// A budget below the certified lower bound of its norm cannot be met by any
// assignment. Records K_r = (1 + omega) sqrt(m) max(T_r, est_r(e_1)) otherwise.
BudgetCheck budget_sanity(const Instance& inst, const BudgetedNorms& budgets);

// MNP(x) = max_r max{ f_r(L(x)), f_r(P(x)_{S*}) } / T_r over a padded instance.
class MultiNormObjective : public FirstOrderOracle {
 public:
  MultiNormObjective(Instance padded, BudgetedNorms budgets);

  std::size_t dim() const override { return inst_.machines() * inst_.jobs(); }
  double omega() const override;
  OracleAnswer query(std::span<const double> x) const override;

  double value(const FractionalAssignment& x) const;
  // (1 + omega) m sqrt(n) p_max, widened when some budget sits below est(e_1).
  double lipschitz_bound() const;

  const Instance& instance() const { return inst_; }

 private:
  Instance inst_;
  BudgetedNorms budgets_;
};

struct MultiSolution {
  MultiStatus status = MultiStatus::kUnresolved;
  std::string reason;
  std::optional<CpSolution> solution;  // set when feasible
  double estimate = 0.0;               // best MNP estimate found
  double lower = 0.0;                  // certified lower bound on min MNP
  double threshold = 0.0;              // (1 + 2w)^2 / (1 - 2w) (1 + eps)
};

// Minimizes MNP over the polytope with eta = eps. Infeasible is declared only
// when a certificate shows min MNP > 1: either the budget sanity check fails,
// a certified lower bound exceeds 1, or the solver converged (so the
// near-optimality bound holds) with the estimate above the threshold. Running
// out of iterations otherwise yields kUnresolved.
MultiSolution solve_multinorm(const Instance& inst, const BudgetedNorms& budgets,
                              const SolveConfig& cfg);

struct MultiSchedule {
  MultiStatus status = MultiStatus::kUnresolved;
  std::string reason;
  Assignment sigma;            // original job indexing
  LoadVector loads;
  std::vector<double> values;  // f_r(loads), one per norm
  std::optional<CpSolution> solution;
  std::size_t roundings = 0;   // number of rounding passes (always 1 when feasible)
};

// Zero-optimum instances short-circuit to the all-zero assignment.
MultiSchedule multinorm_schedule(const Instance& inst, const BudgetedNorms& budgets,
                                 const SolveConfig& cfg);

}  // namespace minnorm

#endif  // MINNORM_MULTINORM_HPP_
