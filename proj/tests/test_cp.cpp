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

#include <cmath>

#include "cp.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "support.hpp"

using namespace minnorm;
using testing::kInf;
using testing::make_instance;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

SolveConfig config(SolverKind kind, std::uint64_t seed = 0) {
  SolveConfig cfg;
  cfg.solver = kind;
  cfg.seed = seed;
  return cfg;
}

FractionalAssignment indicator(const Instance& padded, const Assignment& a) {
  auto s = a.machines();
  s.resize(padded.jobs(), 0);
  return FractionalAssignment::from_assignment(Assignment(s), padded.machines());
}

}  // namespace

TEST_CASE("top_m_jobs") {
  CHECK(top_m_jobs({5, 1, 5, 2}, 2) == std::vector<std::size_t>{0, 2});
  CHECK(top_m_jobs({3, 3, 3}, 2) == std::vector<std::size_t>{0, 1});
  CHECK(top_m_jobs({1, 2, 3}, 3).size() == 3);
  CHECK(throws_code(ErrorCode::kInvalidArgument, [] { top_m_jobs({1, 2}, 3); }));
}

TEST_CASE("g evaluation examples") {
  const CpObjective twos(make_instance({{2, 2}, {2, 2}}), lp_oracle(kInf, 2));
  const auto e = twos.evaluate(FractionalAssignment::uniform(2, 2));
  CHECK(e.estimate == doctest::Approx(2.0));
  CHECK(twos.value(FractionalAssignment::uniform(2, 2)) == doctest::Approx(2.0));

  // One real job split in half plus a zero dummy: the job-cost term decides.
  const auto padded = pad_jobs(make_instance({{1}, {1}}));
  const CpObjective split(padded, lp_oracle(kInf, 2));
  const auto x = FractionalAssignment::uniform(2, 2);
  CHECK(lp_oracle(kInf, 2)->value(fractional_loads(padded, x)) == doctest::Approx(0.5));
  const auto s = split.evaluate(x);
  CHECK(s.estimate == doctest::Approx(1.0));
  CHECK_FALSE(s.load_side);
  CHECK(s.subgradient(0, 0) == doctest::Approx(1.0));
  CHECK(s.subgradient(1, 0) == doctest::Approx(1.0));
  CHECK(s.subgradient(0, 1) == 0.0);

  CHECK(throws_code(ErrorCode::kContract,
                    [] { CpObjective(make_instance({{1}, {1}}), lp_oracle(2.0, 2)); }));
  CHECK(throws_code(ErrorCode::kDimensionMismatch,
                    [] { CpObjective(make_instance({{1, 1}, {1, 1}}), lp_oracle(2.0, 3)); }));
}

TEST_CASE("g at the integral optimum never exceeds it") {
  SplitMix64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = testing::pick(rng, 1, 3), n = testing::pick(rng, 1, 6);
    const auto inst = testing::random_instance(rng, m, n, 9);
    for (const auto& spec : testing::test_norms(m)) {
      std::shared_ptr<const NormOracle> f = make_oracle(spec, m);
      const auto brute = brute_min_norm(inst, *f);
      const auto padded = pad_jobs(inst);
      const CpObjective g(padded, f);
      CHECK(g.value(indicator(padded, brute.assignment)) <= brute.value + 1e-9);
    }
  }
}

TEST_CASE("lower bounds") {
  const auto inst = make_instance({{2, 3}, {4, 1}});
  CHECK(lower_bound(inst, *lp_oracle(kInf, 2)) == doctest::Approx(1.0));
  CHECK(lower_bound(inst, *topl_oracle(2, 2)) == doctest::Approx(1.0));
  CHECK(lower_bound(make_instance({{2, 3, 1}, {4, 1, 1}, {1, 1, 1}}),
                    *ordered_oracle({3, 2, 1}, 3)) == doctest::Approx(3.0));
  CHECK(lower_bound(inst, *lp_oracle(kInf, 2)) <= 1.0);
  CHECK(throws_code(ErrorCode::kContract,
                    [] { lower_bound(make_instance({{0, 1}, {1, 0}}), *lp_oracle(2.0, 2)); }));
  CHECK(throws_code(ErrorCode::kContract,
                    [] { lower_bound(make_instance({{0.5, 1}, {1, 2}}), *lp_oracle(2.0, 2)); }));

  // The relaxation bound stays below the brute-force optimum, also off-grid.
  SplitMix64 rng(32);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = testing::pick(rng, 1, 3), n = testing::pick(rng, 1, 6);
    Matrix p(m, n);
    for (double& v : p.data()) v = rng.uniform(0.0, 5.0);
    const Instance real(p);
    for (const auto& spec : testing::test_norms(m)) {
      const auto f = make_oracle(spec, m);
      const double lb = relaxation_lower_bound(pad_jobs(real), *f);
      CHECK(lb <= brute_min_norm(real, *f).value + 1e-9);
    }
  }
}

TEST_CASE("lipschitz bounds") {
  const auto b = lipschitz_bounds(make_instance({{2, 1}, {0, 2}}), 1.0, 0.0);
  CHECK(b.norm == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.objective == doctest::Approx(2.0 * 2.0 * std::sqrt(2.0)));
  const auto scaled = lipschitz_bounds(make_instance({{6, 3}, {0, 6}}), 1.0, 0.0);
  CHECK(scaled.objective == doctest::Approx(3.0 * b.objective));

  SplitMix64 rng(33);
  for (int t = 0; t < 10; ++t) {
    const std::size_t m = testing::pick(rng, 2, 4), n = testing::pick(rng, m, 7);
    const auto inst = testing::random_nonzero_instance(rng, m, n, 9);
    for (const auto& spec : testing::test_norms(m)) {
      std::shared_ptr<const NormOracle> f = make_oracle(spec, m);
      const double lb = lower_bound(inst, *f);
      const double K = lipschitz_bounds(inst, lb, f->omega()).objective;
      const CpObjective g(inst, f);
      for (int s = 0; s < 100; ++s) {
        const auto x = testing::random_feasible(rng, m, n);
        const auto y = testing::random_feasible(rng, m, n);
        CHECK(std::abs(g.value(y) - g.value(x)) <=
              K * testing::distance(x.matrix(), y.matrix()) + 1e-9);
      }
    }
  }
}

TEST_CASE("projection onto the polytope") {
  Matrix feasible(2, 2);
  feasible(0, 0) = 0.7;
  feasible(1, 0) = 0.6;
  feasible(0, 1) = 1.0;
  CHECK(project_onto_polytope(feasible).matrix() == feasible);
  const auto zero = project_onto_polytope(Matrix(2, 1));
  CHECK(zero(0, 0) == doctest::Approx(0.5));
  CHECK(zero(1, 0) == doctest::Approx(0.5));

  // Grid search over the feasible set of one column, m = 2.
  SplitMix64 rng(34);
  for (int t = 0; t < 50; ++t) {
    Matrix raw(2, 1);
    raw(0, 0) = rng.uniform(-1.0, 2.0);
    raw(1, 0) = rng.uniform(-1.0, 2.0);
    const auto proj = project_onto_polytope(raw);
    CHECK(proj.in_polytope());
    const double d = std::hypot(proj(0, 0) - raw(0, 0), proj(1, 0) - raw(1, 0));
    double best = kInf;
    for (int a = 0; a <= 1000; ++a) {
      for (int b = 0; b <= 1000; ++b) {
        if (a + b < 1000) continue;
        best = std::min(best, std::hypot(a * 1e-3 - raw(0, 0), b * 1e-3 - raw(1, 0)));
      }
    }
    CHECK(d <= best + 1e-9);
    CHECK(d >= best - 1.5e-3);
  }

  for (int t = 0; t < 100; ++t) {
    const auto x = testing::random_feasible(rng, testing::pick(rng, 1, 5), 4);
    CHECK(x.in_polytope(1e-12));
  }
}

TEST_CASE("property: lifted g oracle is a 2 omega-oracle") {
  SplitMix64 rng(35);
  for (int t = 0; t < 4; ++t) {
    const std::size_t m = testing::pick(rng, 2, 4), n = testing::pick(rng, m, 6);
    const auto inst = testing::random_instance(rng, m, n, 9);
    for (const auto& spec : testing::test_norms(m)) {
      const CpObjective g(inst, make_oracle(spec, m));
      for (int s = 0; s < 200; ++s) {
        const auto x = testing::random_feasible(rng, m, n);
        const auto y = testing::random_feasible(rng, m, n);
        const auto ans = g.query(x.matrix().data());
        const double gx = g.value(x);
        CHECK(ans.estimate >= gx - 1e-12);
        CHECK(ans.estimate <= (1.0 + g.omega()) * gx + 1e-12);
        double lin = 0.0;
        for (std::size_t k = 0; k < m * n; ++k) {
          lin += ans.subgradient[k] * (y.matrix().data()[k] - x.matrix().data()[k]);
        }
        CHECK(g.value(y) - gx >= lin - g.omega() * gx - 1e-9);
      }
    }
  }
}

TEST_CASE("solve_cp examples") {
  const double w = kFloatOmega;
  for (auto kind : {SolverKind::kSubgradient, SolverKind::kCuttingPlane}) {
    const auto sol = solve_cp(make_instance({{2, 2}, {2, 2}}), lp_oracle(kInf, 2), config(kind));
    CHECK(sol.T >= 2.0 - 1e-9);
    CHECK(sol.T <= 2.1 * (1 + 5 * w));
    CHECK(sol.x.in_polytope());

    const auto one = solve_cp(make_instance({{1}, {1}}), lp_oracle(kInf, 2), config(kind));
    CHECK(one.T >= 1.0 - 1e-9);
    CHECK(one.T <= 1.05 * (1 + 5 * w));
    CHECK(one.x.jobs() == 2);
  }
  CHECK(throws_code(ErrorCode::kContract, [] {
    solve_cp(make_instance({{0, 1}, {1, 0}}), lp_oracle(2.0, 2), SolveConfig{});
  }));
  CHECK(throws_code(ErrorCode::kContract, [] {
    solve_cp(make_instance({{1, 1}, {1, 1}}),
             perturbed_oracle(lp_oracle(2.0, 2), 0.2, 1), SolveConfig{});
  }));
  SolveConfig bad;
  bad.eps = 0.0;
  CHECK(throws_code(ErrorCode::kInvalidArgument, [&] {
    solve_cp(make_instance({{1, 1}, {1, 1}}), lp_oracle(2.0, 2), bad);
  }));
}

TEST_CASE("solve_cp against brute force") {
  SplitMix64 rng(36);
  for (auto kind : {SolverKind::kSubgradient, SolverKind::kCuttingPlane}) {
    for (int t = 0; t < 30; ++t) {
      const std::size_t m = testing::pick(rng, 1, 3), n = testing::pick(rng, 1, 6);
      const auto inst = testing::random_nonzero_instance(rng, m, n, 9);
      std::vector<NormSpec> specs{NormSpec::lp(1), NormSpec::lp(2), NormSpec::linf()};
      if (m >= 2) specs.push_back(NormSpec::topl(2));
      for (const auto& spec : specs) {
        std::shared_ptr<const NormOracle> f = make_oracle(spec, m);
        const double iopt = brute_min_norm(inst, *f).value;
        const auto sol = solve_cp(inst, f, config(kind, t));
        const double w = f->omega();
        CAPTURE(spec.label());
        CAPTURE(serialize_instance(inst));
        CAPTURE(static_cast<int>(kind));
        CAPTURE(sol.iterations);
        CHECK(sol.T <= (1 + 5 * w) * 1.05 * iopt);
        CHECK(sol.T >= sol.lb);
        CHECK(sol.lb <= iopt + 1e-9);
        CHECK(sol.x.in_polytope());
        const CpObjective g(pad_jobs(inst), f);
        CHECK(sol.T >= (1 - 2 * w) * g.value(sol.x) - 1e-12);
      }
    }
  }
}

TEST_CASE("solve_cp with a degraded oracle") {
  SplitMix64 rng(37);
  for (int t = 0; t < 10; ++t) {
    const std::size_t m = testing::pick(rng, 2, 3), n = testing::pick(rng, m, 6);
    const auto inst = testing::random_nonzero_instance(rng, m, n, 9);
    std::shared_ptr<const NormOracle> base = lp_oracle(2.0, m);
    std::shared_ptr<const NormOracle> f = perturbed_oracle(base, 0.05, t);
    const double iopt = brute_min_norm(inst, *base).value;
    const auto sol = solve_cp(inst, f, SolveConfig{});
    CHECK(sol.T <= (1 + 5 * f->omega()) * 1.05 * iopt);
    CHECK(sol.lb <= iopt + 1e-9);
  }
}

TEST_CASE("solver determinism, monotone trace and scale equivariance") {
  SplitMix64 rng(38);
  for (int t = 0; t < 10; ++t) {
    const std::size_t m = testing::pick(rng, 2, 4), n = testing::pick(rng, m, 7);
    const auto inst = testing::random_nonzero_instance(rng, m, n, 9);
    std::shared_ptr<const NormOracle> f = lp_oracle(2.0, m);
    SolveConfig cfg;
    cfg.seed = 1000 + t;
    cfg.record_trace = true;
    const auto a = solve_cp(inst, f, cfg);
    const auto b = solve_cp(inst, f, cfg);
    CHECK(a.x == b.x);
    CHECK(a.T == b.T);
    CHECK(a.iterations == b.iterations);
    REQUIRE_FALSE(a.trace.empty());
    for (std::size_t k = 1; k < a.trace.size(); ++k) CHECK(a.trace[k] <= a.trace[k - 1]);

    for (double c : {2.0, 0.25, 3.0}) {
      Matrix p = inst.times();
      for (double& v : p.data()) v *= c;
      const auto scaled = solve_cp(Instance(p), f, cfg);
      CAPTURE(c);
      CHECK(std::abs(scaled.T - c * a.T) <= 1e-6 * c * a.T);
    }
  }
}
