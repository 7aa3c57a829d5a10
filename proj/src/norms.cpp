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

#include "norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace minnorm {

namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

class LpNorm final : public NormOracle {
 public:
  LpNorm(double p, std::size_t dim) : NormOracle(dim), p_(p) {}

  double value(std::span<const double> v) const override {
    check_dim(v);
    if (p_ == 1.0) {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x) / scale, p_);
    return scale * std::pow(s, 1.0 / p_);
  }

  // sign(v_i) |v_i|^{p-1} / ||v||_p^{p-1}; zero at the origin.
  std::vector<double> subgradient(std::span<const double> v) const override {
    std::vector<double> mu(v.size(), 0.0);
    const double norm = value(v);
    if (norm == 0.0) return mu;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0.0) continue;
      mu[i] = sign(v[i]) * (p_ == 1.0 ? 1.0 : std::pow(std::abs(v[i]) / norm, p_ - 1.0));
    }
    return mu;
  }

  NormSpec spec() const override { return NormSpec::lp(p_); }

 private:
  double p_;
};

class LinfNorm final : public NormOracle {
 public:
  using NormOracle::NormOracle;

  double value(std::span<const double> v) const override {
    check_dim(v);
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  std::vector<double> subgradient(std::span<const double> v) const override {
    check_dim(v);
    std::vector<double> mu(v.size(), 0.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    if (v[best] != 0.0) mu[best] = sign(v[best]);
    return mu;
  }

  NormSpec spec() const override { return NormSpec::linf(); }
};

class TopLNorm final : public NormOracle {
 public:
  TopLNorm(std::size_t ell, std::size_t dim) : NormOracle(dim), ell_(ell) {}

  double value(std::span<const double> v) const override {
    check_dim(v);
    double s = 0.0;
    for (std::size_t i : largest_indices(v, ell_)) s += std::abs(v[i]);
    return s;
  }

  std::vector<double> subgradient(std::span<const double> v) const override {
    check_dim(v);
    std::vector<double> mu(v.size(), 0.0);
    for (std::size_t i : largest_indices(v, ell_)) mu[i] = sign(v[i]);
    return mu;
  }

  NormSpec spec() const override { return NormSpec::topl(ell_); }

 private:
  std::size_t ell_;
};

class OrderedNorm final : public NormOracle {
 public:
  OrderedNorm(std::vector<double> w, std::size_t dim)
      : NormOracle(dim), weights_(std::move(w)) {}

  double value(std::span<const double> v) const override {
    check_dim(v);
    const auto order = largest_indices(v, v.size());
    double s = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) s += weights_[k] * std::abs(v[order[k]]);
    return s;
  }

  std::vector<double> subgradient(std::span<const double> v) const override {
    check_dim(v);
    const auto order = largest_indices(v, v.size());
    std::vector<double> mu(v.size(), 0.0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      mu[order[k]] = weights_[k] * sign(v[order[k]]);
    }
    return mu;
  }

  NormSpec spec() const override { return NormSpec::ordered(weights_); }

 private:
  std::vector<double> weights_;
};

// Deterministic value in [0, 1) from a seed and the bit pattern of v.
double hash_unit(std::uint64_t seed, std::span<const double> v) {
  std::uint64_t h = seed;
  for (double x : v) {
    h ^= std::bit_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return SplitMix64(h).uniform();
}

class PerturbedNorm final : public NormOracle {
 public:
  PerturbedNorm(std::shared_ptr<const NormOracle> base, double omega, std::uint64_t seed)
      : NormOracle(base->dim()), base_(std::move(base)), omega_(omega), seed_(seed) {}

  double omega() const override { return omega_ + base_->omega(); }
  double value(std::span<const double> v) const override { return base_->value(v); }

  double estimate(std::span<const double> v) const override {
    return base_->estimate(v) * (1.0 + omega_ * hash_unit(seed_, v));
  }

  std::vector<double> subgradient(std::span<const double> v) const override {
    auto mu = base_->subgradient(v);
    const double shrink = 1.0 - omega_ * hash_unit(seed_ ^ 0xA5A5A5A5A5A5A5A5ULL, v);
    for (double& x : mu) x *= shrink;
    return mu;
  }

  NormSpec spec() const override { return base_->spec(); }

 private:
  std::shared_ptr<const NormOracle> base_;
  double omega_;
  std::uint64_t seed_;
};

}  // namespace

std::string NormSpec::label() const {
  switch (kind) {
    case Kind::kLp:
      return "l" + format_number(p);
    case Kind::kLinf:
      return "linf";
    case Kind::kTopL:
      return "top" + std::to_string(ell);
    case Kind::kOrdered: {
      std::string s = "ordered(";
      for (std::size_t k = 0; k < weights.size(); ++k) {
        if (k) s += ",";
        s += format_number(weights[k]);
      }
      return s + ")";
    }
  }
  return "?";
}

void NormOracle::check_dim(std::span<const double> v) const {
  if (v.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "norm of dimension " + std::to_string(dim_) + " applied to vector of length " +
                    std::to_string(v.size()));
  }
}

std::unique_ptr<NormOracle> lp_oracle(double p, std::size_t dim) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorCode::kInvalidSpec, "l_p norm needs p >= 1");
  }
  if (dim == 0) throw Error(ErrorCode::kInvalidSpec, "norm dimension must be positive");
  if (std::isinf(p)) return std::make_unique<LinfNorm>(dim);
  return std::make_unique<LpNorm>(p, dim);
}

std::unique_ptr<NormOracle> topl_oracle(std::size_t ell, std::size_t dim) {
  if (ell < 1 || ell > dim) {
    throw Error(ErrorCode::kInvalidSpec, "top-l norm needs 1 <= l <= " + std::to_string(dim) +
                                             ", got " + std::to_string(ell));
  }
  return std::make_unique<TopLNorm>(ell, dim);
}

std::unique_ptr<NormOracle> ordered_oracle(std::vector<double> weights, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidSpec, "norm dimension must be positive");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!std::isfinite(weights[k]) || weights[k] < 0.0) {
      throw Error(ErrorCode::kInvalidSpec, "ordered-norm weights must be finite and >= 0");
    }
    if (k > 0 && weights[k] > weights[k - 1]) {
      throw Error(ErrorCode::kInvalidSpec, "ordered-norm weights must be nonincreasing");
    }
  }
  if (weights.empty() || weights.front() <= 0.0) {
    throw Error(ErrorCode::kInvalidSpec, "ordered-norm needs a positive leading weight");
  }
  weights.resize(dim, 0.0);
  return std::make_unique<OrderedNorm>(std::move(weights), dim);
}

std::unique_ptr<NormOracle> make_oracle(const NormSpec& spec, std::size_t dim) {
  switch (spec.kind) {
    case NormSpec::Kind::kLp:
      return lp_oracle(spec.p, dim);
    case NormSpec::Kind::kLinf:
      return lp_oracle(std::numeric_limits<double>::infinity(), dim);
    case NormSpec::Kind::kTopL:
      return topl_oracle(spec.ell, dim);
    case NormSpec::Kind::kOrdered:
      return ordered_oracle(spec.weights, dim);
  }
  throw Error(ErrorCode::kInvalidSpec, "unknown norm kind");
}

std::unique_ptr<NormOracle> perturbed_oracle(std::shared_ptr<const NormOracle> base,
                                             double omega, std::uint64_t seed) {
  if (!(omega >= 0.0 && omega < 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "perturbation omega must lie in [0, 1)");
  }
  return std::make_unique<PerturbedNorm>(std::move(base), omega, seed);
}

ScaledOracle::ScaledOracle(std::shared_ptr<const FirstOrderOracle> base, double factor)
    : base_(std::move(base)), factor_(factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be positive and finite");
  }
}

OracleAnswer ScaledOracle::query(std::span<const double> x) const {
  auto a = base_->query(x);
  a.estimate *= factor_;
  for (double& g : a.subgradient) g *= factor_;
  return a;
}

MaxOracle::MaxOracle(std::vector<std::shared_ptr<const FirstOrderOracle>> components,
                     Selector selector)
    : components_(std::move(components)), selector_(std::move(selector)) {
  if (components_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "max combinator needs at least one component");
  }
  for (const auto& c : components_) {
    if (c->dim() != components_.front()->dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "max components differ in dimension");
    }
  }
}

double MaxOracle::omega() const {
  double w = 0.0;
  for (const auto& c : components_) w = std::max(w, c->omega());
  return components_.size() == 1 ? w : 2.0 * w;
}

std::pair<std::size_t, OracleAnswer> MaxOracle::best(std::span<const double> x) const {
  if (components_.size() == 1) return {0, components_.front()->query(x)};
  std::vector<std::size_t> active;
  if (selector_) {
    active = selector_(x);
  } else {
    active.resize(components_.size());
    std::iota(active.begin(), active.end(), std::size_t{0});
  }
  std::sort(active.begin(), active.end());
  std::pair<std::size_t, OracleAnswer> best{0, {}};
  bool have = false;
  for (std::size_t r : active) {
    auto a = components_.at(r)->query(x);
    if (!have || a.estimate > best.second.estimate) {
      best = {r, std::move(a)};
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::kContract, "max selector returned no components");
  return best;
}

OracleAnswer MaxOracle::query(std::span<const double> x) const { return best(x).second; }

std::size_t MaxOracle::argmax(std::span<const double> x) const { return best(x).first; }

std::vector<double> merge_coordinates(std::span<const double> v, std::size_t i,
                                      std::size_t j) {
  if (i == j || i >= v.size() || j >= v.size()) {
    throw Error(ErrorCode::kInvalidArgument, "merge_coordinates needs distinct valid indices");
  }
  std::vector<double> w(v.begin(), v.end());
  w[i] = v[i] + v[j];
  w[j] = 0.0;
  return w;
}

std::vector<std::size_t> largest_indices(std::span<const double> v, std::size_t count) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  count = std::min(count, v.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = std::abs(v[a]);
                      const double vb = std::abs(v[b]);
                      return va > vb || (va == vb && a < b);
                    });
  idx.resize(count);
  return idx;
}

}  // namespace minnorm
