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

#include "core.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "support.hpp"

using namespace minnorm;
using minnorm::testing::make_instance;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kContract;
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK(code_of([] { make_instance({{1.0, -1.0}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { make_instance({{1.0, NAN}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Instance(Matrix(0, 0)); }) == ErrorCode::kInvalidArgument);
  CHECK(make_instance({{1.0, 2.0}}).integer_scaled());
  CHECK_FALSE(make_instance({{1.5, 2.0}}).integer_scaled());
  CHECK(make_instance({{1.0, 7.0}, {3.0, 2.0}}).max_time() == 7.0);
}

TEST_CASE("load_vector") {
  const auto inst = make_instance({{1, 2}, {3, 4}});
  CHECK(load_vector(inst, Assignment({0, 1})) == LoadVector{1, 4});
  CHECK(load_vector(inst, Assignment({0, 0})) == LoadVector{3, 0});
  CHECK(load_vector(make_instance({{0, 0}, {0, 0}}), Assignment({1, 0})) == LoadVector{0, 0});
  CHECK(code_of([&] { load_vector(inst, Assignment({0, 2})); }) == ErrorCode::kInvalidAssignment);
  CHECK(code_of([&] { load_vector(inst, Assignment({0})); }) == ErrorCode::kInvalidAssignment);
}

TEST_CASE("fractional loads and job costs") {
  const auto twos = make_instance({{2, 2}, {2, 2}});
  const auto half = FractionalAssignment::uniform(2, 2);
  CHECK(fractional_loads(twos, half) == LoadVector{2, 2});
  CHECK(job_costs(twos, half) == JobCostVector{2, 2});
  CHECK(fractional_loads(twos, FractionalAssignment(Matrix(2, 2))) == LoadVector{0, 0});

  const auto inst = make_instance({{1, 2}, {3, 4}});
  CHECK(job_costs(inst, FractionalAssignment::from_assignment(Assignment({0, 1}), 2)) ==
        JobCostVector{1, 4});

  Matrix x(2, 1);
  x(0, 0) = 0.9;
  x(1, 0) = 0.1;
  CHECK(job_costs(make_instance({{1}, {10}}), FractionalAssignment(x))[0] ==
        doctest::Approx(1.9));
  CHECK(code_of([&] { job_costs(inst, FractionalAssignment::uniform(3, 2)); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { fractional_loads(inst, FractionalAssignment::uniform(2, 3)); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("pad_jobs") {
  const auto padded = pad_jobs(make_instance({{1}, {2}, {3}}));
  CHECK(padded.machines() == 3);
  CHECK(padded.jobs() == 3);
  CHECK(padded.original_jobs() == 1);
  CHECK(padded.padded());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(padded.p(i, 1) == 0.0);
    CHECK(padded.p(i, 2) == 0.0);
  }
  const auto wide = make_instance({{1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}});
  CHECK(pad_jobs(wide) == wide);
  CHECK_FALSE(pad_jobs(wide).padded());
  const auto single = make_instance({{4}});
  CHECK(pad_jobs(single) == single);
}

TEST_CASE("zero_opt_check") {
  const auto hit = zero_opt_check(make_instance({{0, 5}, {5, 0}}));
  REQUIRE(hit.has_value());
  CHECK(hit->machines() == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(zero_opt_check(make_instance({{2, 2}, {2, 2}})));
  CHECK_FALSE(zero_opt_check(make_instance({{0, 1}, {0, 2}})));
}

TEST_CASE("property: integral x reproduces the assignment") {
  SplitMix64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = testing::pick(rng, 1, 4), n = testing::pick(rng, 1, 7);
    const auto inst = testing::random_instance(rng, m, n, 9);
    std::vector<std::size_t> s(n);
    for (auto& v : s) v = testing::pick(rng, 0, m - 1);
    const Assignment a(s);
    const auto x = FractionalAssignment::from_assignment(a, m);
    CHECK(x.in_polytope());
    CHECK(fractional_loads(inst, x) == load_vector(inst, a));
    const auto costs = job_costs(inst, x);
    for (std::size_t j = 0; j < n; ++j) CHECK(costs[j] == inst.p(s[j], j));
  }
}

TEST_CASE("property: padding preserves loads wherever dummies go") {
  SplitMix64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = testing::pick(rng, 2, 5), n = testing::pick(rng, 1, m);
    const auto inst = testing::random_instance(rng, m, n, 9);
    const auto padded = pad_jobs(inst);
    REQUIRE(padded.jobs() >= m);
    std::vector<std::size_t> s(padded.jobs());
    for (auto& v : s) v = testing::pick(rng, 0, m - 1);
    const Assignment full(s);
    CHECK(load_vector(padded, full) == load_vector(inst, full.truncated(n)));
  }
}

TEST_CASE("property: zero_opt_check agrees with brute-force makespan") {
  SplitMix64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = testing::pick(rng, 1, 3), n = testing::pick(rng, 1, 6);
    const auto inst = testing::random_instance(rng, m, n, 2);
    const auto norm = lp_oracle(testing::kInf, m);
    const bool brute_zero = brute_min_norm(inst, *norm).value == 0.0;
    const auto found = zero_opt_check(inst);
    CHECK(found.has_value() == brute_zero);
    if (found) CHECK(norm->value(load_vector(inst, *found)) == 0.0);
  }
}

TEST_CASE("polytope membership") {
  CHECK(FractionalAssignment::uniform(3, 4).in_polytope());
  Matrix x(2, 2, 0.5);
  x(0, 1) = 0.4;
  CHECK_FALSE(FractionalAssignment(x).in_polytope());
  x(0, 1) = 0.5 - 1e-10;
  CHECK(FractionalAssignment(x).in_polytope());
  x(0, 0) = 1.2;
  CHECK_FALSE(FractionalAssignment(x).in_polytope());
}

TEST_CASE("scale_to_integer_grid") {
  const auto scaled = scale_to_integer_grid(make_instance({{0.5, 1.25}, {2, 0.1}}), 2);
  CHECK(scaled.integer_scaled());
  CHECK(scaled.p(0, 0) == 50.0);
  CHECK(scaled.p(0, 1) == 125.0);
  CHECK(scaled.p(1, 1) == 10.0);
}

TEST_CASE("assignment ordering and truncation") {
  CHECK(Assignment({0, 1}) < Assignment({1, 0}));
  CHECK(Assignment({2, 0, 1}).truncated(2) == Assignment({2, 0}));
}
