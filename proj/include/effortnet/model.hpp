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

#include "effortnet/reward.hpp"
#include "effortnet/topology.hpp"
#include "effortnet/types.hpp"

namespace effortnet {

/// Communication factor node k contributes to every influencee:
/// mu(C_k) e^(-beta x_k) for the EP model, (1 - x_k) for the linear one.
double node_factor(const NetworkTopology& net, const ProductivityModel& model, double x_k, int k);

/// p_i as a product over the influencers of i; the root of a hierarchy (and
/// any source node of a DAG) has productivity exactly 1.
double productivity(const NetworkTopology& net, const ProductivityModel& model,
                    const EffortProfile& x, int i);

/// All productivities at once, 1-based (index 0 unused).
std::vector<double> all_productivities(const NetworkTopology& net, const ProductivityModel& model,
                                       const EffortProfile& x);

/// Fractional productivity p_ij = p_j / p_i for j in E_i, computed as a
/// product over the nodes separating the two (including i, excluding j) so no
/// division is ever performed. Satisfies p_ij * p_i = p_j. Depends on x_i.
double fractional_productivity(const NetworkTopology& net, const ProductivityModel& model,
                               const EffortProfile& x, int i, int j);

/// Partial derivative of p_j with respect to x_i; zero unless i in R_j,
/// nonpositive otherwise.
double productivity_partial(const NetworkTopology& net, const ProductivityModel& model,
                            const EffortProfile& x, int j, int i);

/// -(1/p_i) dp_j/dx_i for j in E_i: the per-unit-output rate at which node
/// i's communication lifts influencee j. Division-free.
double influence_rate(const NetworkTopology& net, const ProductivityModel& model,
                      const EffortProfile& x, int i, int j);

/// u_i = p_i f(x_i) + sum_{j in E_i} h_ij p_j x_j.
double payoff(const NetworkTopology& net, const ProductivityModel& model,
              const DirectPayoff& payoff_fn, const RewardScheme& H, const EffortProfile& x, int i);

/// du_i/dx_i, analytic.
double payoff_gradient(const NetworkTopology& net, const ProductivityModel& model,
                       const DirectPayoff& payoff_fn, const RewardScheme& H,
                       const EffortProfile& x, int i);

/// Per-node outputs y_i = p_i x_i, 1-based.
std::vector<double> node_outputs(const NetworkTopology& net, const ProductivityModel& model,
                                 const EffortProfile& x);

/// SO = sum_i p_i x_i.
double social_output(const NetworkTopology& net, const ProductivityModel& model,
                     const EffortProfile& x);

/// Effective fractional output rate of node i at x:
/// sum_{j in E_i} h_ij (-(1/p_i) dy_j/dx_i). For the EP model this equals
/// beta * sum_j h_ij p_ij x_j.
double efor(const NetworkTopology& net, const ProductivityModel& model, const RewardScheme& H,
            const EffortProfile& x, int i);

}  // namespace effortnet
