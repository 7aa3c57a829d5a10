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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "exact.hpp"
#include "simul.hpp"
#include "support.hpp"

using namespace minnorm;
using testing::make_instance;

namespace {

double top_ell(LoadVector v, std::size_t ell) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t k = 0; k < ell && k < v.size(); ++k) s += v[k];
  return s;
}

SolveConfig coarse() {
  SolveConfig cfg;
  cfg.eps = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("pos_set examples") {
  CHECK(pos_set(4, 1.0) == std::vector<std::size_t>{1, 2, 4});
  CHECK(pos_set(1, 0.3) == std::vector<std::size_t>{1});
  CHECK(pos_set(10, 0.5) == std::vector<std::size_t>{1, 2, 3, 4, 6, 8, 10});
  CHECK(pos_set(3, 0.01) == std::vector<std::size_t>{1, 2, 3});
  CHECK_THROWS_AS(pos_set(0, 0.5), Error);
  CHECK_THROWS_AS(pos_set(3, 0.0), Error);
}

TEST_CASE("property: pos_set covers [m] within one step") {
  SplitMix64 rng(61);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = testing::pick(rng, 1, 200);
    const double eps = rng.uniform(0.05, 2.0);
    const auto pos = pos_set(m, eps);
    CHECK(pos.front() == 1);
    CHECK(pos.back() == m);
    CHECK(std::is_sorted(pos.begin(), pos.end()));
    CHECK(std::adjacent_find(pos.begin(), pos.end()) == pos.end());
    for (std::size_t ell = 1; ell <= m; ++ell) {
      const auto below = *std::prev(std::upper_bound(pos.begin(), pos.end(), ell));
      CHECK(static_cast<double>(ell) <= (1 + eps) * static_cast<double>(below) + 1e-9);
    }
  }
}

TEST_CASE("enumerate_guesses") {
  const auto one = enumerate_guesses({1}, 1.0, {1.0}, {8.0});
  REQUIRE(one.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(one[k].values[0] == doctest::Approx(std::pow(2.0, static_cast<double>(k))));
    CHECK(one[k].exponents[0] == static_cast<int>(k));
  }
  // Default window [lower, 4 (1 + eps) lower].
  CHECK(enumerate_guesses({1}, 1.0, {3.0}).size() == 4);

  // Every kept vector is monotone and subadditive up to one step.
  const std::vector<std::size_t> pos{1, 2, 4};
  const auto many = enumerate_guesses(pos, 0.5, {1.0, 1.5, 2.0}, {6.0, 9.0, 20.0});
  CHECK_FALSE(many.empty());
  for (const auto& g : many) {
    for (std::size_t a = 0; a + 1 < pos.size(); ++a) {
      CHECK(g.values[a + 1] * 1.5 * (1 + 1e-9) >= g.values[a]);
    }
    for (std::size_t a = 0; a < pos.size(); ++a) {
      CHECK(g.values[a] <= 1.5 * static_cast<double>(pos[a]) * g.values[0] * (1 + 1e-9));
    }
  }

  CHECK_THROWS_AS(enumerate_guesses({1, 2}, 0.5, {1.0}, {2.0, 3.0}), Error);
  CHECK_THROWS_AS(enumerate_guesses({1}, 0.5, {0.0}, {2.0}), Error);
  CHECK_THROWS_AS(enumerate_guesses({1}, 0.5, {3.0}, {2.0}), Error);
}

TEST_CASE("property: the true OPT profile is within one step of a guess") {
  SplitMix64 rng(62);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = testing::pick(rng, 2, 4), n = testing::pick(rng, m, 6);
    const auto inst = testing::random_nonzero_instance(rng, m, n, 9);
    const double eps = rng.uniform(0.3, 1.0);
    const auto table = brute_topl_table(inst);
    const auto pos = pos_set(m, eps);
    std::vector<double> opt, lower, upper;
    for (std::size_t ell : pos) opt.push_back(table[ell - 1]);
    for (double v : opt) {
      lower.push_back(v / rng.uniform(1.0, 3.0));
      upper.push_back(v * rng.uniform(1.0, 3.0));
    }
    for (std::size_t a = 1; a < lower.size(); ++a) lower[a] = std::max(lower[a], lower[a - 1]);
    const auto guesses = enumerate_guesses(pos, eps, lower, upper);
    const bool hit = std::any_of(guesses.begin(), guesses.end(), [&](const GuessVector& g) {
      for (std::size_t a = 0; a < pos.size(); ++a) {
        if (g.values[a] < opt[a] * (1 - 1e-9) || g.values[a] > opt[a] * (1 + eps) * (1 + 1e-9)) {
          return false;
        }
      }
      return true;
    });
    CHECK(hit);
  }
}

TEST_CASE("simul examples") {
  const auto twos = make_instance({{2, 2}, {2, 2}});
  const auto res = simul_schedule(twos, coarse());
  CHECK(res.status == MultiStatus::kFeasible);
  CHECK(res.loads == LoadVector{2, 2});
  CHECK(brute_simul_factor(twos).alpha == doctest::Approx(1.0));
  CHECK(topl_ratio(res.loads, brute_topl_table(twos)) == doctest::Approx(1.0));

  const auto single = make_instance({{1, 2, 3}});
  const auto one = simul_schedule(single, coarse());
  CHECK(one.pos == std::vector<std::size_t>{1});
  CHECK(one.loads == LoadVector{6});
  CHECK(one.certified == doctest::Approx(1.0).epsilon(0.05));

  const auto zero = simul_schedule(make_instance({{0, 1}, {3, 0}}), coarse());
  CHECK(zero.status == MultiStatus::kFeasible);
  CHECK(zero.loads == LoadVector{0, 0});
  CHECK(zero.certified == 1.0);
}

TEST_CASE("property: simul against brute force") {
  SplitMix64 rng(63);
  for (int t = 0; t < 12; ++t) {
    const std::size_t m = testing::pick(rng, 2, 3), n = testing::pick(rng, m, 5);
    const auto inst = testing::random_nonzero_instance(rng, m, n, 9);
    const auto res = simul_schedule(inst, coarse());
    const auto truth = brute_simul_factor(inst);
    const double achieved = topl_ratio(res.loads, truth.opt_topl);
    CHECK(res.loads == load_vector(inst, res.sigma));
    CHECK(achieved <= 5 * truth.alpha * (1 + 1e-9));
    CHECK(achieved <= res.certified * (1 + 1e-9));
    for (std::size_t a = 0; a < res.pos.size(); ++a) {
      CHECK(res.lower[a] <= truth.opt_topl[res.pos[a] - 1] * (1 + 1e-9));
      CHECK(res.upper[a] >= truth.opt_topl[res.pos[a] - 1] * (1 - 1e-9));
    }

    // Every infeasible probe is backed by the absence of any fitting assignment.
    const auto guesses = enumerate_guesses(res.pos, 0.5, res.lower, res.upper);
    CHECK(guesses.size() == res.guesses);
    for (const auto& probe : res.probes) {
      if (probe.status != MultiStatus::kInfeasible) continue;
      std::vector<double> budget;
      for (std::size_t a = 0; a < res.pos.size(); ++a) {
        budget.push_back(res.lower[a] *
                         std::pow(1.5, guesses[probe.guess].exponents[a] + probe.alpha_exponent));
      }
      bool fits = false;
      for_each_assignment(inst, kDefaultEnumerationCap,
                          [&](const std::vector<std::size_t>&, const LoadVector& loads) {
                            bool ok = true;
                            for (std::size_t a = 0; a < res.pos.size(); ++a) {
                              ok = ok && top_ell(loads, res.pos[a]) <= budget[a];
                            }
                            fits = fits || ok;
                          });
      CHECK_FALSE(fits);
    }

    // The top-l ratio bounds every ordered norm.
    for (int k = 0; k < 20; ++k) {
      std::vector<double> w(m);
      for (auto& v : w) v = rng.uniform(0.0, 1.0);
      w[0] += 0.1;
      std::sort(w.begin(), w.end(), std::greater<>());
      const auto f = make_oracle(NormSpec::ordered(w), m);
      const double opt = brute_min_norm(inst, *f).value;
      CHECK(f->value(res.loads) <= achieved * opt * (1 + 1e-9));
    }
  }
}

TEST_CASE("simul is deterministic") {
  const auto inst = make_instance({{3, 1, 4, 1}, {5, 9, 2, 6}, {5, 3, 5, 8}});
  const auto a = simul_schedule(inst, coarse());
  const auto b = simul_schedule(inst, coarse());
  CHECK(a.sigma == b.sigma);
  CHECK(a.lower == b.lower);
  CHECK(a.solves == b.solves);
  CHECK(a.probes.size() == b.probes.size());
}
