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

#include "effortnet/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "effortnet/lp.hpp"
#include "effortnet/rng.hpp"

namespace effortnet {

namespace {

constexpr double kSlackTol = 1e-9;

void require_hierarchy(const NetworkTopology& net, const char* what) {
  if (net.kind() != GraphKind::Hierarchy)
    fail(ErrorCode::ValidationError, std::string(what) + " is defined on hierarchies only");
}

double budget(const EpParams& params) {
  if (params.beta == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + params.b) / (params.beta * params.beta);
}

// a_ij over the influencees of i at x, as a dense-in-j row.
std::vector<std::pair<int, double>> coefficient_row(const NetworkTopology& net,
                                                    const EpParams& params,
                                                    const ProductivityModel& model,
                                                    const EffortProfile& x, int i) {
  std::vector<std::pair<int, double>> row;
  const double scale = params.beta / (1.0 + params.b);
  for (int j : net.influencees(i))
    row.push_back({j, scale * fractional_productivity(net, model, x, i, j) * x[j]});
  return row;
}

}  // namespace

std::map<std::pair<int, int>, double> stability_coefficients(const NetworkTopology& net,
                                                             const EpParams& params,
                                                             const EffortProfile& x) {
  require_hierarchy(net, "stability_coefficients");
  const ProductivityModel model = ProductivityModel::ep(params);
  std::map<std::pair<int, int>, double> a;
  for (int i = 1; i <= net.node_count(); ++i)
    for (const auto& [j, value] : coefficient_row(net, params, model, x, i)) a[{i, j}] = value;
  return a;
}

StabilityResult check_stability(const NetworkTopology& net, const EpParams& params,
                                const EffortProfile& x) {
  require_hierarchy(net, "check_stability");
  const ProductivityModel model = ProductivityModel::ep(params);
  const double cap = budget(params);

  StabilityResult result;
  result.method = StabilityResult::Method::AnalyticPerNode;
  result.H = RewardScheme::zero(net.node_count());
  result.stable = true;

  for (int i = 1; i <= net.node_count(); ++i) {
    StabilityResult::NodeSlack slack;
    slack.node = i;
    slack.budget_slack = cap;
    const double need = 1.0 - x[i];

    if (net.is_leaf(i)) {
      slack.output_slack = -need;
      slack.feasible = need <= kSlackTol;
    } else if (need <= 0.0) {
      slack.output_slack = -need;  // empty row already binds the constraint
    } else {
      const auto row = coefficient_row(net, params, model, x, i);
      double a_max = 0.0;
      int j_max = 0;
      for (const auto& [j, a] : row) {
        if (a > a_max) {
          a_max = a;
          j_max = j;
        }
      }
      if (a_max <= 0.0 || cap * a_max < need) {
        slack.feasible = false;
        slack.output_slack = (std::isinf(cap) ? 0.0 : cap * a_max) - need;
        slack.budget_slack = 0.0;
      } else {
        const double h = need / a_max;  // binds the output constraint exactly
        result.H.set(net, i, j_max, h);
        slack.output_slack = 0.0;
        slack.budget_slack = cap - h;
      }
    }
    if (!slack.feasible) result.stable = false;
    result.binding_report.push_back(slack);
  }
  if (!result.stable) result.H = RewardScheme::zero(net.node_count());
  return result;
}

StabilityResult stability_lp(const NetworkTopology& net, const EpParams& params,
                             const EffortProfile& x) {
  require_hierarchy(net, "stability_lp");
  if (params.beta == 0.0) {
    // Budgets are unbounded and every a_ij vanishes: the LP degenerates to
    // the same all-ones test the analytic route performs.
    StabilityResult result = check_stability(net, params, x);
    result.method = StabilityResult::Method::GenericLp;
    return result;
  }

  const ProductivityModel model = ProductivityModel::ep(params);
  const double cap = budget(params);

  StabilityResult result;
  result.method = StabilityResult::Method::GenericLp;
  result.H = RewardScheme::zero(net.node_count());
  result.stable = true;

  for (int i = 1; i <= net.node_count(); ++i) {
    StabilityResult::NodeSlack slack;
    slack.node = i;
    slack.budget_slack = cap;
    const double need = 1.0 - x[i];

    if (net.is_leaf(i)) {
      slack.output_slack = -need;
      slack.feasible = need <= kSlackTol;
      if (!slack.feasible) result.stable = false;
      result.binding_report.push_back(slack);
      continue;
    }

    const auto row = coefficient_row(net, params, model, x, i);
    LpFeasibilityProblem problem;
    problem.variable_count = static_cast<int>(row.size());
    LpConstraint output;
    output.rel = LpConstraint::Rel::Ge;
    output.rhs = need;
    LpConstraint budget_row;
    budget_row.rel = LpConstraint::Rel::Le;
    budget_row.rhs = cap;
    for (const auto& [j, a] : row) {
      output.coeffs.push_back(a);
      budget_row.coeffs.push_back(1.0);
    }
    problem.constraints = {output, budget_row};

    const LpOutcome outcome = solve_feasibility(problem);
    if (outcome.status == LpOutcome::Status::Infeasible) {
      slack.feasible = false;
      double a_max = 0.0;
      for (const auto& [j, a] : row) a_max = std::max(a_max, a);
      slack.output_slack = cap * a_max - need;
      slack.budget_slack = 0.0;
      result.stable = false;
      result.binding_report.push_back(slack);
      continue;
    }

    std::vector<double> h = outcome.point;
    double achieved = 0.0, mass = 0.0;
    for (size_t k = 0; k < row.size(); ++k) {
      achieved += row[k].second * h[k];
      mass += h[k];
    }
    if (need <= 0.0) {
      std::fill(h.begin(), h.end(), 0.0);
      achieved = mass = 0.0;
    } else if (x[i] > 0.0 && achieved > 0.0) {
      // Rescale so the output constraint binds; only the fully slack x_i = 0
      // case keeps the raw LP vertex.
      const double scale = need / achieved;
      for (double& v : h) v *= scale;
      achieved *= scale;
      mass *= scale;
      if (mass > cap + 1e-12) {
        // LP noise pushed the rescaled row over budget; fall back to the
        // concentrated solution, which fits whenever the verdict is feasible.
        std::fill(h.begin(), h.end(), 0.0);
        size_t kbest = 0;
        for (size_t k = 1; k < row.size(); ++k)
          if (row[k].second > row[kbest].second) kbest = k;
        h[kbest] = need / row[kbest].second;
        achieved = need;
        mass = h[kbest];
      }
    }
    for (size_t k = 0; k < row.size(); ++k)
      if (h[k] != 0.0) result.H.set(net, i, row[k].first, h[k]);
    slack.output_slack = achieved - std::max(need, 0.0);
    slack.budget_slack = cap - mass;
    result.binding_report.push_back(slack);
  }
  if (!result.stable) result.H = RewardScheme::zero(net.node_count());
  return result;
}

DesignResult design_reward_scheme(const NetworkTopology& net, const EpParams& params,
                                  const DesignOptions& opts) {
  require_hierarchy(net, "design_reward_scheme");
  const ProductivityModel model = ProductivityModel::ep(params);
  const DirectPayoff payoff_fn(params.b);

  const OptimalEffort opt = optimal_effort(net, model, opts.optimal);
  const StabilityResult stability = check_stability(net, params, opt.x);
  if (stability.stable) {
    const EquilibriumResult eq = solve_equilibrium_tree(net, model, payoff_fn, stability.H);
    return {stability.H, eq.x_star, eq.social_output, DesignGuarantee::OptimalSupported, 1.0};
  }

  const auto shape = net.balanced_shape();
  if (shape && shape->degree >= 2 && params.mu.kind == Mu::Kind::One && params.beta > 0.0) {
    // Full budget, split equally over immediate children; deeper shares zero.
    RewardScheme H = RewardScheme::zero(net.node_count());
    const double cap = budget(params);
    for (int i = 1; i <= net.node_count(); ++i) {
      if (net.is_leaf(i)) continue;
      const double h = cap / net.child_count(i);
      for (int c : net.children(i)) H.set(net, i, c, h);
    }
    const EquilibriumResult eq = solve_equilibrium_tree(net, model, payoff_fn, H);
    const double bound = poa_bound_balanced(shape->degree, shape->depth, params.beta).bound;
    return {H, eq.x_star, eq.social_output, DesignGuarantee::BalancedBounded, bound};
  }

  // Heuristic search over budget-respecting schemes; H = 0 is candidate 0,
  // so the all-ones equilibrium is always available as a baseline.
  const double cap = budget(params);
  std::mt19937_64 rng(opts.seed);
  RewardScheme best_H = RewardScheme::zero(net.node_count());
  EquilibriumResult best_eq = solve_equilibrium_tree(net, model, payoff_fn, best_H);
  for (int c = 1; c < opts.candidates; ++c) {
    RewardScheme H = RewardScheme::zero(net.node_count());
    for (int i = 1; i <= net.node_count(); ++i) {
      const auto& desc = net.influencees(i);
      if (desc.empty()) continue;
      const double used = cap * uniform01(rng);
      std::vector<double> weights(desc.size());
      double total = 0.0;
      for (double& w : weights) {
        w = -std::log(std::max(uniform01(rng), 1e-300));
        total += w;
      }
      for (size_t k = 0; k < desc.size(); ++k) {
        const double h = used * weights[k] / total;
        if (h > 0.0) H.set(net, i, desc[k], h);
      }
    }
    const EquilibriumResult eq = solve_equilibrium_tree(net, model, payoff_fn, H);
    if (eq.social_output > best_eq.social_output + 1e-15) {
      best_H = H;
      best_eq = eq;
    }
  }
  return {best_H, best_eq.x_star, best_eq.social_output, DesignGuarantee::HeuristicBestFound,
          std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace effortnet
