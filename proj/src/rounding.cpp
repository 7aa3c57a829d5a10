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

#include "rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "error.hpp"

namespace minnorm {

namespace {

constexpr double kSnap = 1e-12;

}  // namespace

FilteredAssignment filter(const Instance& inst, const FractionalAssignment& x,
                          const JobCostVector& costs) {
  const std::size_t m = inst.machines();
  const std::size_t n = inst.jobs();
  if (x.machines() != m || x.jobs() != n || costs.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "filter: dimensions differ from instance");
  }
  FilteredAssignment out{Matrix(m, n), std::vector<std::vector<std::size_t>>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double threshold = 2.0 * costs[j] * (1.0 + 1e-12) + 1e-12;
    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (x(i, j) > 0.0 && inst.p(i, j) <= threshold) {
        out.xhat(i, j) = 2.0 * x(i, j);
        mass += out.xhat(i, j);
      }
    }
    if (!(mass > 0.0)) {
      throw Error(ErrorCode::kNumerical,
                  "filter: job " + std::to_string(j) + " has no mass left after filtering");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (out.xhat(i, j) > 0.0) {
        out.xhat(i, j) /= mass;
        out.support[j].push_back(i);
      }
    }
  }
  return out;
}

namespace {

struct Edge {
  std::size_t job;
  std::size_t slot;
  double y;
};

// Job/slot fractional matching and its integral rounding.
class SlotMatching {
 public:
  SlotMatching(std::size_t jobs) : job_edges_(jobs) {}

  std::size_t add_slot(std::size_t machine) {
    slot_machine_.push_back(machine);
    slot_edges_.emplace_back();
    return slot_machine_.size() - 1;
  }

  void add_mass(std::size_t job, std::size_t slot, double y) {
    // A job straddling two slots contributes to both; repeated pours into the
    // same slot merge.
    for (std::size_t e : job_edges_[job]) {
      if (edges_[e].slot == slot) {
        edges_[e].y += y;
        return;
      }
    }
    edges_.push_back({job, slot, y});
    job_edges_[job].push_back(edges_.size() - 1);
    slot_edges_[slot].push_back(edges_.size() - 1);
  }

  std::size_t slot_machine(std::size_t slot) const { return slot_machine_[slot]; }

  // Returns the slot matched to each job listed in `jobs`.
  std::vector<std::size_t> integralize(const std::vector<std::size_t>& jobs) {
    cancel_fractional_structures();
    return extract_matching(jobs);
  }

 private:
  bool fractional(std::size_t e) const {
    return edges_[e].y > kSnap && edges_[e].y < 1.0 - kSnap;
  }

  void snap(std::size_t e) {
    double& y = edges_[e].y;
    if (y <= kSnap) y = 0.0;
    if (y >= 1.0 - kSnap) y = 1.0;
  }

  // Vertex ids: jobs first, then slots.
  std::size_t vertex_count() const { return job_edges_.size() + slot_edges_.size(); }
  bool is_job(std::size_t v) const { return v < job_edges_.size(); }
  const std::vector<std::size_t>& incident(std::size_t v) const {
    return is_job(v) ? job_edges_[v] : slot_edges_[v - job_edges_.size()];
  }
  std::size_t other_end(std::size_t v, std::size_t e) const {
    return is_job(v) ? job_edges_.size() + edges_[e].slot : edges_[e].job;
  }
  double slot_slack(std::size_t v) const {
    double sum = 0.0;
    for (std::size_t e : incident(v)) sum += edges_[e].y;
    return 1.0 - sum;
  }

  // Each round walks the fractional support from some fractional edge until it
  // closes an (even) cycle or both ends are stuck, then shifts mass +/- delta
  // alternately along it. Interior jobs stay tight, and delta is the largest
  // shift keeping every edge in [0, 1] and endpoint slots within capacity, so
  // at least one edge becomes integral per round.
  void cancel_fractional_structures() {
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> position(vertex_count(), none);
    std::size_t scan = 0;
    while (true) {
      while (scan < edges_.size() && !fractional(scan)) ++scan;
      if (scan == edges_.size()) return;

      std::vector<std::size_t> verts{edges_[scan].job};
      std::vector<std::size_t> path;
      position[verts[0]] = 0;
      bool reversed = false;
      bool cycle = false;
      std::size_t cycle_start = 0;
      while (true) {
        const std::size_t v = verts.back();
        const std::size_t last = path.empty() ? none : path.back();
        std::size_t next = none;
        for (std::size_t e : incident(v)) {
          if (e != last && fractional(e)) {
            next = e;
            break;
          }
        }
        if (next == none) {
          if (reversed || path.empty()) break;
          std::reverse(verts.begin(), verts.end());
          std::reverse(path.begin(), path.end());
          for (std::size_t k = 0; k < verts.size(); ++k) position[verts[k]] = k;
          reversed = true;
          continue;
        }
        const std::size_t w = other_end(v, next);
        path.push_back(next);
        if (position[w] != none) {
          cycle = true;
          cycle_start = position[w];
          break;
        }
        position[w] = verts.size();
        verts.push_back(w);
      }
      for (std::size_t v : verts) position[v] = none;

      std::vector<std::size_t> route;
      double up_room = std::numeric_limits<double>::infinity();
      if (cycle) {
        route.assign(path.begin() + static_cast<std::ptrdiff_t>(cycle_start), path.end());
      } else {
        route = path;
        // Path endpoints must be slots; a job endpoint means the job lost
        // tightness numerically.
        if (route.empty() || is_job(verts.front()) || is_job(verts.back())) {
          snap_nearest(scan);
          continue;
        }
        up_room = std::min(up_room, slot_slack(verts.front()));
        if (route.size() % 2 == 1) up_room = std::min(up_room, slot_slack(verts.back()));
      }
      double delta = up_room;
      for (std::size_t k = 0; k < route.size(); ++k) {
        const double y = edges_[route[k]].y;
        delta = std::min(delta, k % 2 == 0 ? 1.0 - y : y);
      }
      if (!(delta > kSnap)) {
        snap_nearest(scan);
        continue;
      }
      for (std::size_t k = 0; k < route.size(); ++k) {
        edges_[route[k]].y += (k % 2 == 0 ? delta : -delta);
        snap(route[k]);
      }
    }
  }

  void snap_nearest(std::size_t e) { edges_[e].y = edges_[e].y >= 0.5 ? 1.0 : 0.0; }

  std::vector<std::size_t> extract_matching(const std::vector<std::size_t>& jobs) {
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> job_slot(job_edges_.size(), none);
    std::vector<std::size_t> slot_job(slot_edges_.size(), none);
    for (std::size_t j : jobs) {
      for (std::size_t e : job_edges_[j]) {
        const std::size_t s = edges_[e].slot;
        if (edges_[e].y >= 0.5 && slot_job[s] == none) {
          job_slot[j] = s;
          slot_job[s] = j;
          break;
        }
      }
    }
    // Exact arithmetic never gets here; after float drift, finish with
    // augmenting paths over the original support so every job stays matched.
    for (std::size_t j : jobs) {
      if (job_slot[j] != none) continue;
      std::vector<char> seen(slot_edges_.size(), 0);
      if (!augment(j, job_slot, slot_job, seen)) {
        throw Error(ErrorCode::kNumerical, "gap_round: no integral matching on the support");
      }
    }
    return job_slot;
  }

  bool augment(std::size_t j, std::vector<std::size_t>& job_slot,
               std::vector<std::size_t>& slot_job, std::vector<char>& seen) const {
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    for (std::size_t e : job_edges_[j]) {
      const std::size_t s = edges_[e].slot;
      if (seen[s]) continue;
      seen[s] = 1;
      if (slot_job[s] == none || augment(slot_job[s], job_slot, slot_job, seen)) {
        job_slot[j] = s;
        slot_job[s] = j;
        return true;
      }
    }
    return false;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> job_edges_;
  std::vector<std::vector<std::size_t>> slot_edges_;
  std::vector<std::size_t> slot_machine_;
};

}  // namespace

Assignment gap_round(const Instance& inst, const FilteredAssignment& filtered) {
  const std::size_t m = inst.machines();
  const std::size_t n = inst.jobs();
  const Matrix& xhat = filtered.xhat;
  if (xhat.rows() != m || xhat.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "gap_round: dimensions differ from instance");
  }
  for (std::size_t j = 0; j < n; ++j) {
    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) mass += xhat(i, j);
    if (std::abs(mass - 1.0) > 1e-9) {
      throw Error(ErrorCode::kContract,
                  "gap_round: job " + std::to_string(j) + " has mass " + std::to_string(mass));
    }
  }

  std::vector<std::size_t> sigma(n, 0);
  std::vector<std::size_t> slotted;
  for (std::size_t j = 0; j < n; ++j) {
    bool placed = false;
    for (std::size_t i = 0; i < m && !placed; ++i) {
      if (xhat(i, j) > 0.0 && inst.p(i, j) == 0.0) {
        sigma[j] = i;
        placed = true;
      }
    }
    if (!placed) slotted.push_back(j);
  }

  SlotMatching matching(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> order;
    double total = 0.0;
    for (std::size_t j : slotted) {
      if (xhat(i, j) > 0.0) {
        order.push_back(j);
        total += xhat(i, j);
      }
    }
    if (order.empty()) continue;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return inst.p(i, a) > inst.p(i, b);
    });
    const auto slots = static_cast<std::size_t>(std::max(1.0, std::ceil(total - 1e-9)));
    std::size_t slot = matching.add_slot(i);
    std::size_t used = 1;
    double room = 1.0;
    for (std::size_t j : order) {
      double mass = xhat(i, j);
      while (mass > 0.0) {
        if (room <= kSnap && used < slots) {
          slot = matching.add_slot(i);
          ++used;
          room = 1.0;
        }
        // The last slot absorbs rounding residue.
        const double put = used == slots ? mass : std::min(mass, room);
        matching.add_mass(j, slot, put);
        mass -= put;
        room -= put;
      }
    }
  }

  const auto job_slot = matching.integralize(slotted);
  for (std::size_t j : slotted) sigma[j] = matching.slot_machine(job_slot[j]);
  return Assignment(std::move(sigma));
}

RoundingResult round_oblivious(const Instance& inst, const FractionalAssignment& x) {
  RoundingResult r;
  r.filtered = filter(inst, x, job_costs(inst, x));
  r.sigma = gap_round(inst, r.filtered);
  r.loads = load_vector(inst, r.sigma);
  return r;
}

RoundedSchedule round_solution(const Instance& inst, const CpSolution& sol,
                               const NormOracle& norm) {
  const Instance padded = pad_jobs(inst);
  RoundedSchedule out;
  out.rounding = round_oblivious(padded, sol.x);
  out.value = norm.value(out.rounding.loads);
  return out;
}

std::vector<MachineBound> machine_bounds(const Instance& inst, const Matrix& xhat,
                                         const Assignment& sigma) {
  std::vector<MachineBound> out(inst.machines());
  const auto loads = load_vector(inst, sigma);
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    out[i].load = loads[i];
    for (std::size_t j = 0; j < inst.jobs(); ++j) {
      out[i].fractional += inst.p(i, j) * xhat(i, j);
      if (sigma.machine(j) == i) out[i].largest = std::max(out[i].largest, inst.p(i, j));
    }
  }
  return out;
}

}  // namespace minnorm
