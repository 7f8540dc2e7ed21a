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

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "effortnet/reward.hpp"
#include "effortnet/topology.hpp"
#include "effortnet/types.hpp"
#include "effortnet/welfare.hpp"

namespace effortnet {

/// a_ij = beta/(1+b) p_ij(x) x_j for j in E_i: the indirect-output rate
/// behind both stability constraint families.
std::map<std::pair<int, int>, double> stability_coefficients(const NetworkTopology& net,
                                                             const EpParams& params,
                                                             const EffortProfile& x);

struct StabilityResult {
  enum class Method { AnalyticPerNode, GenericLp };

  bool stable = false;
  RewardScheme H;  // meaningful iff stable
  Method method = Method::AnalyticPerNode;

  struct NodeSlack {
    int node = 0;
    /// sum_j a_ij h_ij - (1 - x_i); for infeasible nodes the best achievable
    /// value of that expression under the budget.
    double output_slack = 0.0;
    /// (1+b)/beta^2 - sum_j h_ij (infinite when beta = 0).
    double budget_slack = 0.0;
    bool feasible = true;
  };
  std::vector<NodeSlack> binding_report;
};

/// Per-node closed-form stability test: node i passes iff concentrating the
/// whole budget (1+b)/beta^2 on its best influencee covers 1 - x_i; leaf
/// nodes need x_i = 1. The constructed scheme concentrates mass on the
/// argmax coefficient (ties to the lowest id) scaled so the output
/// constraint binds with equality wherever 1 - x_i > 0.
StabilityResult check_stability(const NetworkTopology& net, const EpParams& params,
                                const EffortProfile& x);

/// Same verdict through one feasibility LP per node. The returned scheme may
/// differ from the analytic one (any feasible point is acceptable); rows of
/// nodes with x_i > 0 are rescaled so the output constraint binds.
StabilityResult stability_lp(const NetworkTopology& net, const EpParams& params,
                             const EffortProfile& x);

enum class DesignGuarantee { OptimalSupported, BalancedBounded, HeuristicBestFound };

struct DesignOptions {
  int candidates = 500;  // heuristic search size (candidate 0 is H = 0)
  uint64_t seed = 42;
  OptimalEffortOptions optimal;
};

struct DesignResult {
  RewardScheme H;
  EffortProfile equilibrium;
  double achieved_so = 0.0;
  DesignGuarantee guarantee = DesignGuarantee::HeuristicBestFound;
  double bound = 0.0;  // 1 for OptimalSupported, d^D/t_D for BalancedBounded, NaN otherwise
};

/// Reward-scheme design pipeline: support the social optimum when it is
/// stable; otherwise, on balanced trees (d >= 2, mu = 1), give every node
/// its full budget split equally over its immediate children, which carries
/// the closed-form PoA bound; otherwise fall back to a seeded random search
/// over budget-respecting schemes.
DesignResult design_reward_scheme(const NetworkTopology& net, const EpParams& params,
                                  const DesignOptions& opts = {});

}  // namespace effortnet
