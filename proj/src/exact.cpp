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

#include "exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cp.hpp"
#include "error.hpp"

namespace minnorm {

std::uint64_t assignment_count(std::size_t machines, std::size_t jobs) {
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < jobs; ++j) {
    if (total > UINT64_MAX / machines) return UINT64_MAX;
    total *= machines;
  }
  return total;
}

void for_each_assignment(
    const Instance& inst, std::uint64_t cap,
    const std::function<void(const std::vector<std::size_t>&, const LoadVector&)>& visit) {
  const std::size_t m = inst.machines();
  const std::size_t n = inst.original_jobs();
  const std::uint64_t count = assignment_count(m, n);
  if (count > cap) {
    throw Error(ErrorCode::kCapExceeded, std::to_string(m) + "^" + std::to_string(n) +
                                             " assignments exceed the enumeration cap " +
                                             std::to_string(cap));
  }
  // Mixed-radix counter with the last job as the fastest digit.
  std::vector<std::size_t> sigma(n, 0);
  LoadVector loads(m, 0.0);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::fill(loads.begin(), loads.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) loads[sigma[j]] += inst.p(sigma[j], j);
    visit(sigma, loads);
    for (std::size_t d = n; d-- > 0;) {
      if (++sigma[d] < m) break;
      sigma[d] = 0;
    }
  }
}

BruteResult brute_min_norm(const Instance& inst, const NormOracle& norm, std::uint64_t cap) {
  if (norm.dim() != inst.machines()) {
    throw Error(ErrorCode::kDimensionMismatch, "norm dimension differs from machine count");
  }
  BruteResult best;
  best.value = std::numeric_limits<double>::infinity();
  for_each_assignment(inst, cap, [&](const std::vector<std::size_t>& sigma, const LoadVector& loads) {
    ++best.enumerated;
    const double v = norm.value(loads);
    if (v < best.value) {
      best.value = v;
      best.assignment = Assignment(sigma);
    }
  });
  return best;
}

namespace {

// top_l(v) for l = 1..m.
std::vector<double> topl_profile(const LoadVector& loads) {
  std::vector<double> sorted(loads);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> out(sorted.size());
  double acc = 0.0;
  for (std::size_t l = 0; l < sorted.size(); ++l) out[l] = (acc += sorted[l]);
  return out;
}

}  // namespace

std::vector<double> brute_topl_table(const Instance& inst, std::uint64_t cap) {
  std::vector<double> opt(inst.machines(), std::numeric_limits<double>::infinity());
  for_each_assignment(inst, cap, [&](const std::vector<std::size_t>&, const LoadVector& loads) {
    const auto prof = topl_profile(loads);
    for (std::size_t l = 0; l < prof.size(); ++l) opt[l] = std::min(opt[l], prof[l]);
  });
  return opt;
}

double topl_ratio(const LoadVector& loads, const std::vector<double>& opt_topl) {
  const auto prof = topl_profile(loads);
  double worst = 1.0;
  for (std::size_t l = 0; l < prof.size() && l < opt_topl.size(); ++l) {
    double r;
    if (opt_topl[l] == 0.0) {
      r = prof[l] == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
      r = prof[l] / opt_topl[l];
    }
    worst = std::max(worst, r);
  }
  return worst;
}

SimulFactor brute_simul_factor(const Instance& inst, std::uint64_t cap) {
  SimulFactor out;
  out.opt_topl = brute_topl_table(inst, cap);
  out.alpha = std::numeric_limits<double>::infinity();
  for_each_assignment(inst, cap, [&](const std::vector<std::size_t>& sigma, const LoadVector& loads) {
    ++out.enumerated;
    const double r = topl_ratio(loads, out.opt_topl);
    if (r < out.alpha) {
      out.alpha = r;
      out.witness = Assignment(sigma);
    }
  });
  return out;
}

ValidityCheck check_cp_validity(const Instance& inst, std::shared_ptr<const NormOracle> norm,
                                std::uint64_t cap) {
  const auto brute = brute_min_norm(inst, *norm, cap);
  const Instance padded = pad_jobs(inst);
  auto sigma = brute.assignment.machines();
  sigma.resize(padded.jobs(), 0);
  const auto x = FractionalAssignment::from_assignment(Assignment(sigma), padded.machines());
  const CpObjective objective(padded, norm);
  ValidityCheck out;
  out.optimum = brute.value;
  out.relaxation_value = objective.value(x);
  out.valid = out.relaxation_value <= out.optimum + 1e-9;
  return out;
}

bool merge_chain_holds(const Instance& inst, const NormOracle& norm,
                       const std::vector<std::size_t>& subset, const Assignment& sigma,
                       double tol) {
  const std::size_t m = inst.machines();
  if (subset.size() != m) throw Error(ErrorCode::kInvalidArgument, "subset must have m jobs");
  sigma.validate(inst);
  std::vector<double> v(m);
  for (std::size_t k = 0; k < m; ++k) v[k] = inst.p(sigma.machine(subset[k]), subset[k]);

  // Coordinate k stands for job subset[k]; fold every job into the first
  // coordinate holding a job of the same machine.
  double current = norm.value(v);
  std::vector<std::size_t> owner(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t machine = sigma.machine(subset[k]);
    if (owner[machine] == m) {
      owner[machine] = k;
      continue;
    }
    v = merge_coordinates(v, owner[machine], k);
    const double next = norm.value(v);
    if (next < current - tol) return false;
    current = next;
  }

  LoadVector restricted(m, 0.0);
  for (std::size_t j : subset) restricted[sigma.machine(j)] += inst.p(sigma.machine(j), j);
  std::vector<double> a(v), b(restricted);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(a[k] - b[k]) > tol * std::max(1.0, std::abs(b[k]))) return false;
  }
  return std::abs(norm.value(restricted) - current) <= tol * std::max(1.0, current);
}

}  // namespace minnorm
