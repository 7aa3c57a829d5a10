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

// Shared generators and helpers for the test binaries.

#ifndef MINNORM_TESTS_SUPPORT_HPP_
#define MINNORM_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "core.hpp"
#include "cp.hpp"
#include "norms.hpp"
#include "pipeline.hpp"
#include "rng.hpp"

namespace minnorm::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline Instance make_instance(std::vector<std::vector<double>> rows) {
  Matrix p(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) p(i, j) = rows[i][j];
  }
  return Instance(std::move(p));
}

inline std::size_t pick(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below_inclusive(hi - lo));
}

// Integer instance with entries in {0..pmax}; zero columns allowed.
inline Instance random_instance(SplitMix64& rng, std::size_t m, std::size_t n,
                                std::uint64_t pmax) {
  Matrix p(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p(i, j) = static_cast<double>(rng.below_inclusive(pmax));
  }
  return Instance(std::move(p));
}

// Integer instance whose optimum is nonzero.
inline Instance random_nonzero_instance(SplitMix64& rng, std::size_t m, std::size_t n,
                                        std::uint64_t pmax) {
  for (;;) {
    Instance inst = generate_instance(m, n, pmax, rng.next());
    if (!zero_opt_check(inst)) return inst;
  }
}

inline std::vector<double> random_vector(SplitMix64& rng, std::size_t dim, double lo, double hi) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

// Random point of the assignment polytope: random columns projected onto it,
// sometimes left with extra mass.
inline FractionalAssignment random_feasible(SplitMix64& rng, std::size_t m, std::size_t n) {
  Matrix raw(m, n);
  for (double& x : raw.data()) x = rng.uniform(-0.3, 1.0);
  return project_onto_polytope(raw);
}

// The norms exercised everywhere: l1, l1.5, l2, l3, linf, top-2 (when m >= 2)
// and ordered(3,2,1) truncated to m.
inline std::vector<NormSpec> test_norms(std::size_t m) {
  std::vector<NormSpec> out{NormSpec::lp(1.0), NormSpec::lp(1.5), NormSpec::lp(2.0),
                            NormSpec::lp(3.0), NormSpec::linf()};
  if (m >= 2) out.push_back(NormSpec::topl(2));
  out.push_back(NormSpec::ordered({3.0, 2.0, 1.0}));
  return out;
}

inline std::shared_ptr<const NormOracle> oracle(const NormSpec& spec, std::size_t dim) {
  return make_oracle(spec, dim);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double distance(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const double d = a.data()[k] - b.data()[k];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace minnorm::testing

#endif  // MINNORM_TESTS_SUPPORT_HPP_
