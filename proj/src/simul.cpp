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

#include "simul.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

#include "error.hpp"
#include "rounding.hpp"

namespace minnorm {

namespace {

double top_ell(const LoadVector& loads, std::size_t ell) {
  std::vector<double> v(loads);
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t k = 0; k < ell && k < v.size(); ++k) s += v[k];
  return s;
}

// Smallest t >= 0 with base (1 + eps)^t >= target, up to relative slack.
int steps_to_reach(double base, double target, double eps) {
  int t = 0;
  double v = base;
  while (v < target * (1.0 - 1e-12)) {
    v *= 1.0 + eps;
    ++t;
  }
  return t;
}

}  // namespace

std::vector<std::size_t> pos_set(std::size_t m, double eps) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  }
  std::vector<std::size_t> out;
  for (double x = 1.0;; x *= 1.0 + eps) {
    // Strip the roundoff that accumulates in repeated products.
    const double c = std::ceil(x * (1.0 - 1e-12));
    const std::size_t v = c >= static_cast<double>(m) ? m : static_cast<std::size_t>(c);
    if (out.empty() || out.back() != v) out.push_back(v);
    if (v == m) break;
  }
  return out;
}

std::vector<GuessVector> enumerate_guesses(const std::vector<std::size_t>& pos, double eps,
                                           const std::vector<double>& lower,
                                           const std::vector<double>& upper) {
  const std::size_t k = pos.size();
  if (lower.size() != k || upper.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "window bounds must match the POS set");
  }
  std::vector<int> width(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (!(lower[a] > 0.0) || !(upper[a] >= lower[a])) {
      throw Error(ErrorCode::kInvalidArgument, "guess windows need 0 < lower <= upper");
    }
    width[a] = steps_to_reach(lower[a], upper[a], eps);
  }
  const double step = 1.0 + eps;
  std::vector<GuessVector> out;
  std::vector<int> t(k, 0);
  std::vector<double> g(k);
  for (;;) {
    for (std::size_t a = 0; a < k; ++a) g[a] = lower[a] * std::pow(step, t[a]);
    bool keep = true;
    for (std::size_t a = 0; a < k && keep; ++a) {
      if (g[a] > step * static_cast<double>(pos[a]) * g[0] * (1.0 + 1e-12)) keep = false;
      for (std::size_t b = a + 1; b < k && keep; ++b) {
        if (g[b] * step * (1.0 + 1e-12) < g[a]) keep = false;
      }
    }
    if (keep) {
      if (out.size() == kMaxGuesses) {
        throw Error(ErrorCode::kCapExceeded, "guess enumeration exceeds its cap");
      }
      out.push_back(GuessVector{t, g});
    }
    std::size_t d = k;
    while (d > 0) {
      --d;
      if (++t[d] <= width[d]) break;
      t[d] = 0;
      if (d == 0) return out;
    }
    if (k == 0) return out;
  }
}

std::vector<GuessVector> enumerate_guesses(const std::vector<std::size_t>& pos, double eps,
                                           const std::vector<double>& lower) {
  std::vector<double> upper(lower.size());
  for (std::size_t a = 0; a < lower.size(); ++a) upper[a] = 4.0 * (1.0 + eps) * lower[a];
  return enumerate_guesses(pos, eps, lower, upper);
}

SimulResult simul_schedule(const Instance& inst, const SolveConfig& cfg) {
  cfg.validate();
  const Instance padded = pad_jobs(inst);
  const std::size_t m = inst.machines();
  const double eps = cfg.eps;
  SimulResult out;
  out.pos = pos_set(m, eps);

  if (auto zero = zero_opt_check(padded)) {
    out.status = MultiStatus::kFeasible;
    out.sigma = zero->truncated(inst.original_jobs());
    out.loads = load_vector(padded, *zero);
    out.lower.assign(out.pos.size(), 0.0);
    out.upper.assign(out.pos.size(), 0.0);
    out.pos_factor = out.certified = 1.0;
    return out;
  }

  std::vector<std::shared_ptr<const NormOracle>> norms;
  for (std::size_t ell : out.pos) norms.push_back(topl_oracle(ell, m));

  // Candidate assignments and their loads on the padded instance.
  std::vector<std::pair<Assignment, LoadVector>> candidates;
  for (std::size_t a = 0; a < out.pos.size(); ++a) {
    const auto sol = solve_cp(padded, norms[a], cfg);
    const auto rounding = round_oblivious(padded, sol.x);
    out.lower.push_back(sol.lb);
    candidates.emplace_back(rounding.sigma, rounding.loads);
  }
  // OPT_l is nondecreasing in l.
  for (std::size_t a = 1; a < out.lower.size(); ++a) {
    out.lower[a] = std::max(out.lower[a], out.lower[a - 1]);
  }
  out.upper.assign(out.pos.size(), std::numeric_limits<double>::infinity());
  for (const auto& c : candidates) {
    for (std::size_t a = 0; a < out.pos.size(); ++a) {
      out.upper[a] = std::min(out.upper[a], top_ell(c.second, out.pos[a]));
    }
  }
  for (std::size_t a = 0; a < out.pos.size(); ++a) {
    out.upper[a] = std::max(out.upper[a], out.lower[a]);
  }

  const auto guesses = enumerate_guesses(out.pos, eps, out.lower, out.upper);
  out.guesses = guesses.size();
  const int alpha_steps = steps_to_reach(1.0, 4.0 * static_cast<double>(m) * (1.0 + eps), eps);

  // Budgets depend only on the combined exponents, so solves are shared.
  std::map<std::vector<int>, MultiSchedule> memo;
  auto attempt = [&](std::size_t gi, int alpha) -> const MultiSchedule& {
    std::vector<int> key(guesses[gi].exponents);
    for (int& e : key) e += alpha;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BudgetedNorms budgets;
    for (std::size_t a = 0; a < out.pos.size(); ++a) {
      budgets.push_back({norms[a], out.lower[a] * std::pow(1.0 + eps, key[a])});
    }
    ++out.solves;
    return memo.emplace(key, multinorm_schedule(padded, budgets, cfg)).first->second;
  };

  for (std::size_t gi = 0; gi < guesses.size(); ++gi) {
    int lo = 0, hi = alpha_steps;
    const MultiSchedule* found = nullptr;
    while (lo <= hi) {
      const int mid = lo + (hi - lo) / 2;
      const auto& res = attempt(gi, mid);
      out.probes.push_back({gi, mid, res.status});
      if (res.status == MultiStatus::kFeasible) {
        found = &res;
        hi = mid - 1;
      } else {
        lo = mid + 1;
      }
    }
    if (found != nullptr) candidates.emplace_back(found->sigma, found->loads);
  }

  auto factor = [&](const LoadVector& loads) {
    double worst = 0.0;
    for (std::size_t a = 0; a < out.pos.size(); ++a) {
      worst = std::max(worst, top_ell(loads, out.pos[a]) / out.lower[a]);
    }
    return worst;
  };
  bool any_multi = candidates.size() > out.pos.size();
  const std::pair<Assignment, LoadVector>* best = nullptr;
  double best_factor = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    const double f = factor(c.second);
    const Assignment s = c.first.truncated(inst.original_jobs());
    if (f < best_factor ||
        (f == best_factor && s < best->first.truncated(inst.original_jobs()))) {
      best_factor = f;
      best = &c;
    }
  }
  out.status = any_multi ? MultiStatus::kFeasible : MultiStatus::kUnresolved;
  out.sigma = best->first.truncated(inst.original_jobs());
  out.loads = best->second;
  out.pos_factor = best_factor;
  out.certified = out.pos.size() == m ? best_factor : best_factor * (1.0 + eps);
  return out;
}

}  // namespace minnorm
