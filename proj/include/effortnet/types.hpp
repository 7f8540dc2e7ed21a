// Copyright 2026 The Effortnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "effortnet/error.hpp"

namespace effortnet {

/// Attenuation applied per influencer as a function of its child count.
/// Values lie in [0,1] and are non-increasing in the child count.
struct Mu {
  enum class Kind { One, Power };

  Kind kind = Kind::One;
  double alpha = 0.0;

  static Mu one() { return Mu{}; }
  static Mu power(double alpha) {
    if (alpha < 0.0) fail(ErrorCode::ValidationError, "mu power exponent must be >= 0");
    return Mu{Kind::Power, alpha};
  }

  double operator()(int child_count) const {
    if (kind == Kind::One) return 1.0;
    return std::pow(static_cast<double>(child_count < 1 ? 1 : child_count), -alpha);
  }
};

/// Communication quality beta (higher = worse), communication cost b, and the
/// per-node attenuation rule.
struct EpParams {
  double beta = 0.0;
  double b = 0.0;
  Mu mu;

  static EpParams validated(double beta, double b, Mu mu = Mu::one()) {
    if (!(beta >= 0.0)) fail(ErrorCode::ValidationError, "beta must be >= 0");
    if (!(b >= 0.0)) fail(ErrorCode::ValidationError, "b must be >= 0");
    return EpParams{beta, b, mu};
  }
};

/// Quadratic direct payoff f(x) = x - x^2/2 - b(1-x)^2/2. Strictly concave,
/// with f'(x) = (1+b)(1-x) and inverse derivative ell(y) = 1 - y/(1+b).
class DirectPayoff {
 public:
  explicit DirectPayoff(double b) : b_(b) {
    if (!(b >= 0.0)) fail(ErrorCode::ValidationError, "payoff cost coefficient b must be >= 0");
  }

  double f(double x) const { return x - x * x / 2.0 - b_ * (1.0 - x) * (1.0 - x) / 2.0; }
  double fprime(double x) const { return (1.0 + b_) * (1.0 - x); }
  /// ell = inverse of f'.
  double ell(double y) const { return 1.0 - y / (1.0 + b_); }
  double b() const { return b_; }

 private:
  double b_ = 0.0;
};

/// Productivity rule: either the exponential-communication product
/// prod_k mu(C_k) e^(-beta x_k) over the influencers, or the linear product
/// prod_k (1 - x_k).
class ProductivityModel {
 public:
  enum class Kind { EpProduct, LinearProduct };

  static ProductivityModel ep(EpParams params) { return ProductivityModel(Kind::EpProduct, params); }
  static ProductivityModel linear() { return ProductivityModel(Kind::LinearProduct, EpParams{}); }

  Kind kind() const { return kind_; }
  bool is_ep() const { return kind_ == Kind::EpProduct; }
  const EpParams& ep_params() const {
    if (kind_ != Kind::EpProduct) fail(ErrorCode::ValidationError, "model has no EP parameters");
    return params_;
  }

 private:
  ProductivityModel(Kind kind, EpParams params) : kind_(kind), params_(params) {}
  Kind kind_;
  EpParams params_;
};

/// Per-node production efforts, indexed 1..n. The complementary
/// communication effort of node i is 1 - x_i.
class EffortProfile {
 public:
  EffortProfile() = default;
  explicit EffortProfile(int n) : x_(n + 1, 0.0) {}
  explicit EffortProfile(std::vector<double> one_based) : x_(std::move(one_based)) {
    if (x_.empty()) x_.assign(1, 0.0);
    x_[0] = 0.0;
  }

  static EffortProfile constant(int n, double v) {
    EffortProfile p(n);
    for (int i = 1; i <= n; ++i) p[i] = v;
    return p;
  }
  static EffortProfile ones(int n) { return constant(n, 1.0); }

  /// Builds from a 0-based list (node 1 first), range-checking [0,1].
  static EffortProfile from_list(const std::vector<double>& values) {
    EffortProfile p(static_cast<int>(values.size()));
    for (size_t k = 0; k < values.size(); ++k) {
      if (!(values[k] >= 0.0 && values[k] <= 1.0))
        fail(ErrorCode::ValidationError,
             "effort x[" + std::to_string(k + 1) + "] = " + std::to_string(values[k]) + " outside [0,1]");
      p[static_cast<int>(k) + 1] = values[k];
    }
    return p;
  }

  int size() const { return static_cast<int>(x_.size()) - 1; }
  double operator[](int i) const { return x_[i]; }
  double& operator[](int i) { return x_[i]; }

  /// Raw 1-based storage (index 0 unused).
  const std::vector<double>& raw() const { return x_; }

  std::vector<double> to_list() const { return std::vector<double>(x_.begin() + 1, x_.end()); }

 private:
  std::vector<double> x_;
};

inline double max_abs_diff(const EffortProfile& a, const EffortProfile& b) {
  double m = 0.0;
  for (int i = 1; i <= a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace effortnet
