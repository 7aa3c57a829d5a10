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

#ifndef MINNORM_CP_HPP_
#define MINNORM_CP_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "core.hpp"
#include "norms.hpp"

namespace minnorm {

// Largest omega accepted by solve_cp.
inline constexpr double kMaxCpOmega = 0.1;

enum class SolverKind { kSubgradient, kCuttingPlane };

struct SolveConfig {
  double eps = 0.05;
  // 0 selects the backend default: 20000 for the subgradient method,
  // 50 (mn)^2 for the cutting-plane method.
  std::int64_t max_iters = 0;
  SolverKind solver = SolverKind::kSubgradient;
  std::uint64_t seed = 0;

  // Level-set Polyak rule of the subgradient backend. The level sits `delta`
  // below the best value; delta grows by `level_growth` when the level is
  // reached and halves after `stall_patience` iterations without reaching it.
  std::int64_t stall_patience = 30;
  double level_growth = 1.5;

  bool record_trace = false;

  void validate() const;
  std::int64_t iteration_limit(std::size_t m, std::size_t n) const;
};

struct CpSolution {
  FractionalAssignment x;  // over the padded instance
  double T = 0.0;          // oracle estimate of g(x)
  double lb = 0.0;         // certified lower bound on the integral optimum
  std::int64_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // best estimate after each iteration, if recorded
};

// Indices of the m jobs with the largest cost, ties toward lower index.
std::vector<std::size_t> top_m_jobs(const JobCostVector& costs, std::size_t m);

struct GEvaluation {
  double estimate = 0.0;
  Matrix subgradient;     // m x n, lifted from the winning component
  bool load_side = true;  // winner was f(L(x)) rather than f(P(x)_{S*})
};

// g(x) = max{ f(L(x)), max_{|S| = m} f(P(x)_S) } over a padded instance. The
// inner max is attained at S* = top_m_jobs(P(x)), so each query calls the norm
// oracle exactly twice and the result is a 2 omega-first-order oracle for g.
class CpObjective : public FirstOrderOracle {
 public:
  CpObjective(Instance padded, std::shared_ptr<const NormOracle> norm);

  std::size_t dim() const override { return inst_.machines() * inst_.jobs(); }
  double omega() const override { return 2.0 * norm_->omega(); }
  OracleAnswer query(std::span<const double> x) const override;

  GEvaluation evaluate(const FractionalAssignment& x) const;
  // g computed with exact norm values.
  double value(const FractionalAssignment& x) const;

  const Instance& instance() const { return inst_; }
  const NormOracle& norm() const { return *norm_; }

 private:
  Instance inst_;
  std::shared_ptr<const NormOracle> norm_;
};

// est(e_1) / (1 + omega). Requires an integer instance with nonzero optimum,
// which makes it a lower bound on the integral optimum.
double lower_bound(const Instance& inst, const NormOracle& norm);

// Lower bound on the relaxation optimum valid for any instance:
//   max{ f(top-m of q), (sum_j q_j / m) f(1,...,1) } / (1 + omega)
// with q_j = min_i p_ij. Scales linearly with p.
double relaxation_lower_bound(const Instance& inst, const NormOracle& norm);

struct LipschitzBounds {
  double norm;       // K_f = (1 + omega) sqrt(m) lb
  double objective;  // K = sqrt(mn) p_max K_f
};
LipschitzBounds lipschitz_bounds(const Instance& inst, double lb, double omega);

// Euclidean projection onto {x in [0,1]^{m x n} : sum_i x(i, j) >= 1}, one
// column at a time.
FractionalAssignment project_onto_polytope(const Matrix& raw);

struct PolytopeMinimum {
  FractionalAssignment x;
  double best = 0.0;   // estimate at x
  double lower = 0.0;  // lower bound on min h over the polytope
  std::int64_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// Minimizes h over the m x n assignment polytope with the configured backend.
// Stops once best - lower <= eta on two consecutive checks, when `stop_early`
// accepts the current best value, or at the iteration limit.
PolytopeMinimum minimize_over_polytope(const FirstOrderOracle& h, std::size_t m,
                                       std::size_t n, double lower, double eta,
                                       const SolveConfig& cfg,
                                       const std::function<bool(double)>& stop_early = {});

// Approximately minimizes g over the polytope with eta = eps * lb. The caller
// handles zero-optimum instances; the instance is padded here if needed.
CpSolution solve_cp(const Instance& inst, std::shared_ptr<const NormOracle> norm,
                    const SolveConfig& cfg);

}  // namespace minnorm

#endif  // MINNORM_CP_HPP_
