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

#include <vector>

#include "effortnet/equilibrium.hpp"
#include "effortnet/model.hpp"

namespace effortnet {

enum class OptimalMethod { ClosedFormBalanced, ClosedFormFlat, BruteForce };

struct OptimalEffortOptions {
  int grid = 101;
  int refine_rounds = 3;
  bool force_brute_force = false;
};

struct OptimalEffort {
  EffortProfile x;
  double so = 0.0;
  OptimalMethod method = OptimalMethod::BruteForce;
};

/// Social-output maximizer. Balanced EP hierarchies with mu = 1 use the
/// closed forms (all-zero internal efforts above the communication
/// threshold, all-ones for flat trees below it); everything else runs a
/// grid search with local refinement. Leaves are pinned at unit effort
/// first. Non-balanced searches are capped at 12 nodes.
OptimalEffort optimal_effort(const NetworkTopology& net, const ProductivityModel& model,
                             const OptimalEffortOptions& opts = {});

struct PoaReport {
  double so_equilibrium = 0.0;
  double so_optimal = 0.0;
  double poa = 0.0;
  EffortProfile x_star;
  EffortProfile x_opt;
  OptimalMethod optimal_method = OptimalMethod::BruteForce;
  bool multiplicity_note = false;
  bool degenerate = false;  // SO(x*) = 0: poa reported as +infinity
};

/// PoA = SO(x_opt) / SO(x*), with the equilibrium from the tree route for
/// EP hierarchies and from fixed-point iteration otherwise.
PoaReport poa(const NetworkTopology& net, const ProductivityModel& model,
              const DirectPayoff& payoff_fn, const RewardScheme& H,
              const OptimalEffortOptions& opt_opts = {}, const FixedPointOptions& fp_opts = {});

struct XiResult {
  double value = 0.0;
  bool near_degenerate = false;  // beta within 1e-6 of the domain edge
};

/// Unique fixed point of x = [1 - e^(-beta x)/beta]^+ for beta > 1; the
/// equilibrium effort of a fully budgeted penultimate-level node. Throws
/// DomainError for beta <= 1.
XiResult xi(double beta);

struct BalancedBoundReport {
  int d = 0;
  int D = 0;
  double beta = 0.0;
  double xi = 0.0;                   // NaN when beta <= 1
  std::vector<double> phi_sequence;  // t_1 .. t_D (empty when beta <= 1)
  double bound = 1.0;
  bool clamped = false;  // raw d^D / t_D fell below 1 and was floored
};

/// Closed-form price-of-anarchy bound for a balanced d-ary hierarchy of
/// depth D: exactly 1 for beta <= 1, d^D / t_D otherwise, floored at 1.
BalancedBoundReport poa_bound_balanced(int d, int D, double beta);

}  // namespace effortnet
