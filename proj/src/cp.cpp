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

#include "cp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace minnorm {

void SolveConfig::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must be positive and finite");
  }
  if (max_iters < 0) throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  if (stall_patience < 1 || !(level_growth >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid step-rule parameters");
  }
}

std::int64_t SolveConfig::iteration_limit(std::size_t m, std::size_t n) const {
  if (max_iters > 0) return max_iters;
  if (solver == SolverKind::kSubgradient) return 20000;
  const auto d = static_cast<std::int64_t>(m * n);
  return 50 * d * d;
}

std::vector<std::size_t> top_m_jobs(const JobCostVector& costs, std::size_t m) {
  if (m > costs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "top_m_jobs: m = " + std::to_string(m) +
                                                 " exceeds job count " +
                                                 std::to_string(costs.size()));
  }
  return largest_indices(costs, m);
}

CpObjective::CpObjective(Instance padded, std::shared_ptr<const NormOracle> norm)
    : inst_(std::move(padded)), norm_(std::move(norm)) {
  if (inst_.jobs() < inst_.machines()) {
    throw Error(ErrorCode::kContract, "objective needs a padded instance (n >= m)");
  }
  if (norm_->dim() != inst_.machines()) {
    throw Error(ErrorCode::kDimensionMismatch, "norm dimension differs from machine count");
  }
}

GEvaluation CpObjective::evaluate(const FractionalAssignment& x) const {
  const std::size_t m = inst_.machines();
  const std::size_t n = inst_.jobs();
  const auto loads = fractional_loads(inst_, x);
  const auto costs = job_costs(inst_, x);
  const auto top = top_m_jobs(costs, m);
  std::vector<double> top_costs(m);
  for (std::size_t k = 0; k < m; ++k) top_costs[k] = costs[top[k]];

  const auto on_loads = norm_->query(loads);
  const auto on_jobs = norm_->query(top_costs);

  GEvaluation out;
  out.subgradient = Matrix(m, n);
  if (on_loads.estimate >= on_jobs.estimate) {
    out.estimate = on_loads.estimate;
    out.load_side = true;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out.subgradient(i, j) = inst_.p(i, j) * on_loads.subgradient[i];
      }
    }
  } else {
    out.estimate = on_jobs.estimate;
    out.load_side = false;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t j = top[k];
      for (std::size_t i = 0; i < m; ++i) {
        out.subgradient(i, j) = inst_.p(i, j) * on_jobs.subgradient[k];
      }
    }
  }
  return out;
}

OracleAnswer CpObjective::query(std::span<const double> x) const {
  Matrix xm(inst_.machines(), inst_.jobs());
  if (x.size() != dim()) throw Error(ErrorCode::kDimensionMismatch, "g queried off-dimension");
  std::copy(x.begin(), x.end(), xm.data().begin());
  auto e = evaluate(FractionalAssignment(std::move(xm)));
  auto flat = e.subgradient.data();
  return {e.estimate, std::vector<double>(flat.begin(), flat.end())};
}

double CpObjective::value(const FractionalAssignment& x) const {
  const auto loads = fractional_loads(inst_, x);
  const auto costs = job_costs(inst_, x);
  const auto top = top_m_jobs(costs, inst_.machines());
  std::vector<double> top_costs;
  for (std::size_t j : top) top_costs.push_back(costs[j]);
  return std::max(norm_->value(loads), norm_->value(top_costs));
}

double lower_bound(const Instance& inst, const NormOracle& norm) {
  if (!inst.integer_scaled()) {
    throw Error(ErrorCode::kContract, "lower_bound needs integer processing times");
  }
  if (zero_opt_check(inst)) {
    throw Error(ErrorCode::kContract, "lower_bound called on a zero-optimum instance");
  }
  std::vector<double> e1(norm.dim(), 0.0);
  e1[0] = 1.0;
  return norm.estimate(e1) / (1.0 + norm.omega());
}

double relaxation_lower_bound(const Instance& inst, const NormOracle& norm) {
  const std::size_t m = inst.machines();
  std::vector<double> cheapest(inst.jobs());
  double total = 0.0;
  for (std::size_t j = 0; j < inst.jobs(); ++j) {
    double q = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) q = std::min(q, inst.p(i, j));
    cheapest[j] = q;
    total += q;
  }
  // Every fractional point has P_j >= q_j, and the loads sum to at least
  // sum_j q_j; symmetry and convexity put f(L) above f of the averaged vector.
  std::vector<double> top(m, 0.0);
  const auto idx = largest_indices(cheapest, m);
  for (std::size_t k = 0; k < idx.size(); ++k) top[k] = cheapest[idx[k]];
  std::vector<double> ones(m, 1.0);
  const double bound =
      std::max(norm.estimate(top), total / static_cast<double>(m) * norm.estimate(ones));
  return bound / (1.0 + norm.omega());
}

LipschitzBounds lipschitz_bounds(const Instance& inst, double lb, double omega) {
  const double m = static_cast<double>(inst.machines());
  const double n = static_cast<double>(inst.jobs());
  const double k_norm = (1.0 + omega) * std::sqrt(m) * lb;
  return {k_norm, std::sqrt(m * n) * inst.max_time() * k_norm};
}

FractionalAssignment project_onto_polytope(const Matrix& raw) {
  const std::size_t m = raw.rows();
  const std::size_t n = raw.cols();
  Matrix out(m, n);
  std::vector<double> col(m);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      col[i] = raw(i, j);
      top = std::max(top, col[i]);
      sum += std::clamp(col[i], 0.0, 1.0);
    }
    double shift = 0.0;
    if (sum < 1.0) {
      // Project onto {sum = 1} intersected with the box: find tau with
      // sum_i clamp(x_i + tau, 0, 1) = 1 by bisection. At lo the sum is 0, at
      // hi it is at least 1.
      double lo = -top;
      double hi = 1.0 - top;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // spacing of doubles reached
        double s = 0.0;
        for (double v : col) s += std::clamp(v + mid, 0.0, 1.0);
        (s < 1.0 ? lo : hi) = mid;
      }
      shift = hi;
    }
    for (std::size_t i = 0; i < m; ++i) out(i, j) = std::clamp(col[i] + shift, 0.0, 1.0);
  }
  return FractionalAssignment(std::move(out));
}

namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

FractionalAssignment starting_point(std::size_t m, std::size_t n, std::uint64_t seed) {
  Matrix x(m, n, 1.0 / static_cast<double>(m));
  if (seed != 0) {
    SplitMix64 rng(seed);
    const double amp = 0.1 / static_cast<double>(m);
    for (double& v : x.data()) v += rng.uniform(-amp, amp);
  }
  return project_onto_polytope(x);
}

PolytopeMinimum subgradient_method(const FirstOrderOracle& h, std::size_t m, std::size_t n,
                                   double lower, double eta, const SolveConfig& cfg,
                                   const std::function<bool(double)>& stop_early) {
  const std::int64_t limit = cfg.iteration_limit(m, n);
  PolytopeMinimum res;
  FractionalAssignment x = starting_point(m, n, cfg.seed);
  OracleAnswer a = h.query(x.matrix().data());
  res.x = x;
  res.best = a.estimate;
  res.lower = lower;

  double delta = std::max(res.best - lower, eta);
  std::int64_t stall = 0;
  int close_checks = 0;
  Matrix step_point(m, n);

  for (std::int64_t k = 1; k <= limit; ++k) {
    res.iterations = k;
    if (stop_early && stop_early(res.best)) break;
    const double g2 = squared_norm(a.subgradient);
    if (g2 == 0.0) {
      // Zero subgradient: x minimizes h up to the oracle's omega.
      res.converged = true;
      break;
    }
    // Step along the gradient mapping, i.e. the part of the subgradient that
    // points along feasible directions at x. The raw subgradient is often
    // dominated by the normal of the active column constraints.
    const double tau = 1e-4 / std::sqrt(g2);
    auto xd = x.matrix().data();
    auto sd = step_point.data();
    for (std::size_t t = 0; t < xd.size(); ++t) sd[t] = xd[t] - tau * a.subgradient[t];
    const auto probe = project_onto_polytope(step_point);
    std::vector<double> dir(xd.size());
    for (std::size_t t = 0; t < xd.size(); ++t) dir[t] = (xd[t] - probe.matrix().data()[t]) / tau;
    const double d2 = squared_norm(dir);
    if (d2 <= 1e-18 * g2) {
      // No feasible descent direction for this subgradient, so x is optimal up
      // to omega; the last term covers the residual over the polytope's diameter.
      const double slack = 2.0 * std::sqrt(d2 * static_cast<double>(m * n));
      res.lower = std::max(res.lower,
                           a.estimate * (1.0 - h.omega()) / (1.0 + h.omega()) - slack);
      res.converged = true;
      break;
    }
    const double level = res.best - delta;
    // Never move farther than the polytope's diameter sqrt(mn).
    const double step = std::min((a.estimate - level) / d2,
                                 std::sqrt(static_cast<double>(m * n) / d2));
    for (std::size_t t = 0; t < xd.size(); ++t) sd[t] = xd[t] - step * dir[t];
    x = project_onto_polytope(step_point);
    a = h.query(x.matrix().data());

    if (a.estimate < res.best) {
      res.best = a.estimate;
      res.x = x;
    }
    if (a.estimate <= level) {
      delta *= cfg.level_growth;
      stall = 0;
    } else if (++stall >= cfg.stall_patience) {
      delta *= 0.5;
      stall = 0;
      x = res.x;
      a = h.query(x.matrix().data());
    }
    if (cfg.record_trace) res.trace.push_back(res.best);

    if (res.best - res.lower <= eta) {
      if (++close_checks >= 2) {
        res.converged = true;
        break;
      }
    } else {
      close_checks = 0;
    }
  }
  return res;
}

// Central/deep-cut ellipsoid method over the ball B(0, sqrt(mn)) intersected
// with the polytope. Infeasible centers get a cut from the most violated
// constraint; feasible centers get an objective cut from the oracle's
// subgradient, deepened by how far the center is above the incumbent.
PolytopeMinimum cutting_plane_method(const FirstOrderOracle& h, std::size_t m, std::size_t n,
                                     double lower, double eta, const SolveConfig& cfg,
                                     const std::function<bool(double)>& stop_early) {
  const std::size_t d = m * n;
  const std::int64_t limit = cfg.iteration_limit(m, n);
  const double w = h.omega();
  const double dd = static_cast<double>(d);

  PolytopeMinimum res;
  res.x = FractionalAssignment::uniform(m, n);
  res.best = h.query(res.x.matrix().data()).estimate;
  res.lower = lower;

  std::vector<double> c(d, 0.0);
  std::vector<double> q(d * d, 0.0);
  for (std::size_t t = 0; t < d; ++t) q[t * d + t] = dd;  // R^2 = mn
  std::vector<double> a(d), qa(d);
  int close_checks = 0;

  for (std::int64_t k = 1; k <= limit; ++k) {
    res.iterations = k;
    if (stop_early && stop_early(res.best)) break;

    // Most violated constraint, measured in the ellipsoid's metric.
    std::fill(a.begin(), a.end(), 0.0);
    double violation = 0.0;
    double depth_ratio = 0.0;
    bool feasible = true;
    auto consider = [&](const std::vector<std::pair<std::size_t, double>>& coeffs, double viol) {
      double aqa = 0.0;
      for (auto [s, cs] : coeffs) {
        for (auto [t, ct] : coeffs) aqa += cs * ct * q[s * d + t];
      }
      if (aqa <= 0.0) return;
      const double ratio = viol / std::sqrt(aqa);
      if (feasible || ratio > depth_ratio) {
        feasible = false;
        depth_ratio = ratio;
        violation = viol;
        std::fill(a.begin(), a.end(), 0.0);
        for (auto [s, cs] : coeffs) a[s] = cs;
      }
    };
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      std::vector<std::pair<std::size_t, double>> column;
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t s = i * n + j;
        sum += c[s];
        column.emplace_back(s, -1.0);
        if (c[s] < 0.0) consider({{s, -1.0}}, -c[s]);
        if (c[s] > 1.0) consider({{s, 1.0}}, c[s] - 1.0);
      }
      if (sum < 1.0) consider(column, 1.0 - sum);
    }

    double depth = 0.0;
    if (!feasible) {
      depth = violation;
    } else {
      const auto ans = h.query(c);
      if (ans.estimate < res.best) {
        res.best = ans.estimate;
        Matrix xm(m, n);
        std::copy(c.begin(), c.end(), xm.data().begin());
        res.x = FractionalAssignment(std::move(xm));
      }
      a = ans.subgradient;
      double aqa = 0.0;
      for (std::size_t s = 0; s < d; ++s) {
        double row = 0.0;
        for (std::size_t t = 0; t < d; ++t) row += q[s * d + t] * a[t];
        aqa += a[s] * row;
      }
      if (aqa <= 0.0) {
        res.converged = true;
        break;
      }
      const double width = std::sqrt(aqa);
      // h(y) >= (1 - w) h(c) - width for every y left in the ellipsoid.
      const double floor = (1.0 - w) * ans.estimate / (1.0 + w) - width;
      res.lower = std::max(res.lower, floor);
      depth = std::max(0.0, (1.0 - w) * ans.estimate / (1.0 + w) - res.best);
    }
    if (cfg.record_trace) res.trace.push_back(res.best);

    if (res.best - res.lower <= eta) {
      if (++close_checks >= 2) {
        res.converged = true;
        break;
      }
    } else {
      close_checks = 0;
    }

    // qa = Q a, aqa = a^T Q a
    double aqa = 0.0;
    for (std::size_t s = 0; s < d; ++s) {
      double row = 0.0;
      for (std::size_t t = 0; t < d; ++t) row += q[s * d + t] * a[t];
      qa[s] = row;
      aqa += a[s] * row;
    }
    if (!(aqa > 0.0)) break;
    const double sq = std::sqrt(aqa);
    const double alpha = std::min(depth / sq, 0.999);
    for (double& v : qa) v /= sq;
    const double move = (1.0 + dd * alpha) / (dd + 1.0);
    for (std::size_t s = 0; s < d; ++s) c[s] -= move * qa[s];
    const double scale = dd * dd / (dd * dd - 1.0) * (1.0 - alpha * alpha);
    const double rank1 = 2.0 * (1.0 + dd * alpha) / ((dd + 1.0) * (1.0 + alpha));
    for (std::size_t s = 0; s < d; ++s) {
      for (std::size_t t = s; t < d; ++t) {
        const double v = scale * (q[s * d + t] - rank1 * qa[s] * qa[t]);
        q[s * d + t] = v;
        q[t * d + s] = v;
      }
    }
  }
  res.lower = std::min(res.lower, res.best);
  return res;
}

}  // namespace

PolytopeMinimum minimize_over_polytope(const FirstOrderOracle& h, std::size_t m,
                                       std::size_t n, double lower, double eta,
                                       const SolveConfig& cfg,
                                       const std::function<bool(double)>& stop_early) {
  cfg.validate();
  if (h.dim() != m * n) throw Error(ErrorCode::kDimensionMismatch, "objective dimension != mn");
  if (m == 1) {
    // The polytope is the single point x = 1.
    PolytopeMinimum res;
    res.x = FractionalAssignment(Matrix(1, n, 1.0));
    res.best = h.query(res.x.matrix().data()).estimate;
    res.lower = res.best / (1.0 + h.omega());
    res.converged = true;
    if (cfg.record_trace) res.trace.push_back(res.best);
    return res;
  }
  if (cfg.solver == SolverKind::kCuttingPlane) {
    return cutting_plane_method(h, m, n, lower, eta, cfg, stop_early);
  }
  return subgradient_method(h, m, n, lower, eta, cfg, stop_early);
}

CpSolution solve_cp(const Instance& inst, std::shared_ptr<const NormOracle> norm,
                    const SolveConfig& cfg) {
  cfg.validate();
  if (norm->omega() > kMaxCpOmega) {
    throw Error(ErrorCode::kContract, "norm oracle omega exceeds 1/10");
  }
  Instance padded = pad_jobs(inst);
  if (zero_opt_check(padded)) {
    throw Error(ErrorCode::kContract, "solve_cp called on a zero-optimum instance");
  }
  // Work on p / p_max so that rescaling the instance leaves the iterates
  // unchanged whenever the rescaled entries are exact.
  const double unit = padded.max_time();
  Matrix normalized = padded.times();
  for (double& v : normalized.data()) v /= unit;
  Instance scaled = pad_jobs(Instance(std::move(normalized)));
  double scaled_lb = relaxation_lower_bound(scaled, *norm);
  if (padded.integer_scaled()) scaled_lb = std::max(scaled_lb, lower_bound(padded, *norm) / unit);
  const double lb = scaled_lb * unit;

  CpObjective objective(std::move(scaled), norm);
  const std::size_t m = padded.machines();
  const std::size_t n = padded.jobs();
  auto res = minimize_over_polytope(objective, m, n, scaled_lb, cfg.eps * scaled_lb, cfg);

  CpSolution sol;
  sol.x = std::move(res.x);
  sol.T = res.best * unit;
  sol.lb = std::min(std::max(lb, res.lower * unit), sol.T);
  sol.iterations = res.iterations;
  sol.converged = res.converged;
  sol.trace = std::move(res.trace);
  for (double& t : sol.trace) t *= unit;
  return sol;
}

}  // namespace minnorm
