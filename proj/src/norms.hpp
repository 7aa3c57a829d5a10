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

#ifndef MINNORM_NORMS_HPP_
#define MINNORM_NORMS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minnorm {

// Rounding slack declared by the float-exact oracles.
inline constexpr double kFloatOmega = 1e-9;

struct OracleAnswer {
  double estimate = 0.0;
  std::vector<double> subgradient;
};

// omega-first-order oracle for a convex h on R^dim: the estimate lies in
// [h(x), (1 + omega) h(x)] and the returned vector mu satisfies
//   h(y) - h(x) >= mu . (y - x) - omega h(x)   for all y.
class FirstOrderOracle {
 public:
  virtual ~FirstOrderOracle() = default;
  virtual std::size_t dim() const = 0;
  virtual double omega() const = 0;
  virtual OracleAnswer query(std::span<const double> x) const = 0;
};

struct NormSpec {
  enum class Kind { kLp, kLinf, kTopL, kOrdered };

  Kind kind = Kind::kLinf;
  double p = 2.0;               // kLp
  std::size_t ell = 1;          // kTopL
  std::vector<double> weights;  // kOrdered

  static NormSpec lp(double p) { return {Kind::kLp, p, 1, {}}; }
  static NormSpec linf() { return {Kind::kLinf, 2.0, 1, {}}; }
  static NormSpec topl(std::size_t ell) { return {Kind::kTopL, 2.0, ell, {}}; }
  static NormSpec ordered(std::vector<double> w) {
    return {Kind::kOrdered, 2.0, 1, std::move(w)};
  }

  // Short human-readable label, e.g. "l2", "linf", "top2", "ordered(3,2,1)".
  std::string label() const;

  bool operator==(const NormSpec&) const = default;
};

// Monotone symmetric norm on R^dim. Values are computed on |v| so every
// oracle is total on signed inputs.
class NormOracle : public FirstOrderOracle {
 public:
  explicit NormOracle(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const override { return dim_; }
  double omega() const override { return kFloatOmega; }

  virtual double value(std::span<const double> v) const = 0;
  virtual std::vector<double> subgradient(std::span<const double> v) const = 0;
  virtual double estimate(std::span<const double> v) const { return value(v); }
  virtual NormSpec spec() const = 0;

  OracleAnswer query(std::span<const double> v) const override {
    return {estimate(v), subgradient(v)};
  }

 protected:
  void check_dim(std::span<const double> v) const;

 private:
  std::size_t dim_;
};

// p in [1, inf]; p == inf yields the l_inf oracle.
std::unique_ptr<NormOracle> lp_oracle(double p, std::size_t dim);
std::unique_ptr<NormOracle> topl_oracle(std::size_t ell, std::size_t dim);
// Weights must be nonnegative, nonincreasing, with a positive leading entry.
// Shorter lists are padded with zeros and longer ones truncated to dim.
std::unique_ptr<NormOracle> ordered_oracle(std::vector<double> weights, std::size_t dim);
std::unique_ptr<NormOracle> make_oracle(const NormSpec& spec, std::size_t dim);

// Wraps an exact oracle and degrades it into a genuine omega-oracle: the
// estimate is inflated by a factor in [1, 1 + omega] and the subgradient shrunk
// by a factor in [1 - omega, 1], both drawn deterministically from (seed, v).
// Shrinking (never growing) the subgradient keeps the approximate-subgradient
// inequality valid for any norm.
std::unique_ptr<NormOracle> perturbed_oracle(std::shared_ptr<const NormOracle> base,
                                             double omega, std::uint64_t seed);

// x -> factor * h(x), factor > 0.
class ScaledOracle : public FirstOrderOracle {
 public:
  ScaledOracle(std::shared_ptr<const FirstOrderOracle> base, double factor);

  std::size_t dim() const override { return base_->dim(); }
  double omega() const override { return base_->omega(); }
  OracleAnswer query(std::span<const double> x) const override;

 private:
  std::shared_ptr<const FirstOrderOracle> base_;
  double factor_;
};

// First-order oracle for h(x) = max_r h_r(x). The estimate is the largest
// component estimate and the subgradient comes from the lowest index attaining
// it, which gives a 2 omega-oracle (omega is preserved for a single component).
// An optional selector narrows the components queried at x to a subset that is
// known to contain a maximizer of h.
class MaxOracle : public FirstOrderOracle {
 public:
  using Selector = std::function<std::vector<std::size_t>(std::span<const double>)>;

  explicit MaxOracle(std::vector<std::shared_ptr<const FirstOrderOracle>> components,
                     Selector selector = {});

  std::size_t dim() const override { return components_.front()->dim(); }
  double omega() const override;
  OracleAnswer query(std::span<const double> x) const override;

  // Index of the component whose subgradient query(x) returns.
  std::size_t argmax(std::span<const double> x) const;

 private:
  std::pair<std::size_t, OracleAnswer> best(std::span<const double> x) const;

  std::vector<std::shared_ptr<const FirstOrderOracle>> components_;
  Selector selector_;
};

// w = v with w_i = v_i + v_j and w_j = 0.
std::vector<double> merge_coordinates(std::span<const double> v, std::size_t i,
                                      std::size_t j);

// Indices of the `count` largest |v_k|, ties toward the lower index, listed in
// that order.
std::vector<std::size_t> largest_indices(std::span<const double> v, std::size_t count);

}  // namespace minnorm

#endif  // MINNORM_NORMS_HPP_
