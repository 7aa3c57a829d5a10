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

#include "multinorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace minnorm {

const char* to_string(MultiStatus s) {
  switch (s) {
    case MultiStatus::kFeasible:
      return "feasible";
    case MultiStatus::kInfeasible:
      return "infeasible";
    case MultiStatus::kUnresolved:
      return "unresolved";
  }
  return "unknown";
}

namespace {

void validate_budgets(const Instance& inst, const BudgetedNorms& budgets) {
  if (budgets.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one budget required");
  for (const auto& b : budgets) {
    if (!b.norm) throw Error(ErrorCode::kInvalidArgument, "budget without a norm");
    if (b.norm->dim() != inst.machines()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "budgeted norm dimension differs from machine count");
    }
    if (!(b.budget > 0.0) || !std::isfinite(b.budget)) {
      throw Error(ErrorCode::kInvalidArgument, "budgets must be positive and finite");
    }
  }
}

double max_omega(const BudgetedNorms& budgets) {
  double w = 0.0;
  for (const auto& b : budgets) w = std::max(w, b.norm->omega());
  return w;
}

double unit_estimate(const NormOracle& norm) {
  std::vector<double> e1(norm.dim(), 0.0);
  e1[0] = 1.0;
  return norm.estimate(e1);
}

// Lower bound on f_r over the polytope (and hence on any assignment).
double norm_floor(const Instance& padded, const NormOracle& norm) {
  double lb = relaxation_lower_bound(padded, norm);
  if (padded.integer_scaled() && !zero_opt_check(padded)) {
    lb = std::max(lb, lower_bound(padded, norm));
  }
  return lb;
}

}  // namespace

BudgetCheck budget_sanity(const Instance& inst, const BudgetedNorms& budgets) {
  validate_budgets(inst, budgets);
  const Instance padded = pad_jobs(inst);
  const double root_m = std::sqrt(static_cast<double>(inst.machines()));
  BudgetCheck check;
  for (std::size_t r = 0; r < budgets.size(); ++r) {
    const auto& b = budgets[r];
    if (check.ok && b.budget < norm_floor(padded, *b.norm) * (1.0 - 1e-12)) {
      check.ok = false;
      check.failing = r;
    }
    check.norm_lipschitz.push_back((1.0 + b.norm->omega()) * root_m *
                                   std::max(b.budget, unit_estimate(*b.norm)));
  }
  return check;
}

MultiNormObjective::MultiNormObjective(Instance padded, BudgetedNorms budgets)
    : inst_(std::move(padded)), budgets_(std::move(budgets)) {
  if (inst_.jobs() < inst_.machines()) {
    throw Error(ErrorCode::kContract, "objective needs a padded instance (n >= m)");
  }
  validate_budgets(inst_, budgets_);
}

double MultiNormObjective::omega() const { return 2.0 * max_omega(budgets_); }

OracleAnswer MultiNormObjective::query(std::span<const double> x) const {
  const std::size_t m = inst_.machines();
  const std::size_t n = inst_.jobs();
  if (x.size() != m * n) throw Error(ErrorCode::kDimensionMismatch, "MNP queried off-dimension");
  Matrix xm(m, n);
  std::copy(x.begin(), x.end(), xm.data().begin());
  const FractionalAssignment fx(std::move(xm));
  const auto loads = fractional_loads(inst_, fx);
  const auto costs = job_costs(inst_, fx);
  const auto top = top_m_jobs(costs, m);
  std::vector<double> top_costs(m);
  for (std::size_t k = 0; k < m; ++k) top_costs[k] = costs[top[k]];

  // Components in order: loads for every r, then job costs for every r.
  const std::size_t k = budgets_.size();
  std::size_t winner = 0;
  OracleAnswer best;
  for (std::size_t c = 0; c < 2 * k; ++c) {
    const auto& b = budgets_[c % k];
    auto a = b.norm->query(c < k ? std::span<const double>(loads)
                                 : std::span<const double>(top_costs));
    a.estimate /= b.budget;
    if (c == 0 || a.estimate > best.estimate) {
      winner = c;
      best = std::move(a);
    }
  }

  const double inv = 1.0 / budgets_[winner % k].budget;
  OracleAnswer out{best.estimate, std::vector<double>(m * n, 0.0)};
  if (winner < k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out.subgradient[i * n + j] = inst_.p(i, j) * best.subgradient[i] * inv;
      }
    }
  } else {
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t j = top[s];
      for (std::size_t i = 0; i < m; ++i) {
        out.subgradient[i * n + j] = inst_.p(i, j) * best.subgradient[s] * inv;
      }
    }
  }
  return out;
}

double MultiNormObjective::value(const FractionalAssignment& x) const {
  const auto loads = fractional_loads(inst_, x);
  const auto costs = job_costs(inst_, x);
  const auto top = top_m_jobs(costs, inst_.machines());
  std::vector<double> top_costs;
  for (std::size_t j : top) top_costs.push_back(costs[j]);
  double v = 0.0;
  for (const auto& b : budgets_) {
    v = std::max({v, b.norm->value(loads) / b.budget, b.norm->value(top_costs) / b.budget});
  }
  return v;
}

double MultiNormObjective::lipschitz_bound() const {
  const double m = static_cast<double>(inst_.machines());
  const double n = static_cast<double>(inst_.jobs());
  double widen = 1.0;
  for (const auto& b : budgets_) widen = std::max(widen, unit_estimate(*b.norm) / b.budget);
  return (1.0 + max_omega(budgets_)) * m * std::sqrt(n) * inst_.max_time() * widen;
}

MultiSolution solve_multinorm(const Instance& inst, const BudgetedNorms& budgets,
                              const SolveConfig& cfg) {
  cfg.validate();
  validate_budgets(inst, budgets);
  const double w = max_omega(budgets);
  if (w > kMaxMultiOmega) {
    throw Error(ErrorCode::kContract, "norm oracle omega exceeds 1/18");
  }
  const Instance padded = pad_jobs(inst);
  MultiSolution out;
  out.threshold = (1.0 + 2.0 * w) * (1.0 + 2.0 * w) / (1.0 - 2.0 * w) * (1.0 + cfg.eps);

  if (auto zero = zero_opt_check(padded)) {
    CpSolution sol;
    sol.x = FractionalAssignment::from_assignment(*zero, padded.machines());
    sol.converged = true;
    out.status = MultiStatus::kFeasible;
    out.reason = "zero_optimum";
    out.solution = std::move(sol);
    return out;
  }

  const auto check = budget_sanity(inst, budgets);
  if (!check.ok) {
    out.status = MultiStatus::kInfeasible;
    out.reason = "budget_sanity";
    return out;
  }

  double lower = 0.0;
  for (const auto& b : budgets) lower = std::max(lower, norm_floor(padded, *b.norm) / b.budget);

  MultiNormObjective objective(padded, budgets);
  auto res = minimize_over_polytope(objective, padded.machines(), padded.jobs(), lower,
                                    cfg.eps, cfg, [](double best) { return best <= 1.0; });
  out.estimate = res.best;
  out.lower = res.lower;
  if (res.best <= out.threshold) {
    CpSolution sol;
    sol.x = std::move(res.x);
    sol.T = res.best;
    sol.lb = std::min(res.lower, res.best);
    sol.iterations = res.iterations;
    sol.converged = true;
    sol.trace = std::move(res.trace);
    out.status = MultiStatus::kFeasible;
    out.reason = "within_threshold";
    out.solution = std::move(sol);
  } else if (res.lower > 1.0) {
    out.status = MultiStatus::kInfeasible;
    out.reason = "certified_lower_bound";
  } else if (res.converged) {
    out.status = MultiStatus::kInfeasible;
    out.reason = "threshold";
  } else {
    out.status = MultiStatus::kUnresolved;
    out.reason = "iteration_limit";
  }
  return out;
}

MultiSchedule multinorm_schedule(const Instance& inst, const BudgetedNorms& budgets,
                                 const SolveConfig& cfg) {
  const Instance padded = pad_jobs(inst);
  auto sol = solve_multinorm(inst, budgets, cfg);
  MultiSchedule out;
  out.status = sol.status;
  out.reason = sol.reason;
  if (sol.status != MultiStatus::kFeasible) return out;

  const auto rounding = round_oblivious(padded, sol.solution->x);
  out.roundings = 1;
  out.sigma = rounding.sigma.truncated(inst.original_jobs());
  out.loads = rounding.loads;
  for (const auto& b : budgets) out.values.push_back(b.norm->value(out.loads));
  out.solution = std::move(sol.solution);
  return out;
}

}  // namespace minnorm
