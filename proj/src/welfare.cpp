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

#include "effortnet/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace effortnet {

namespace {

// Coordinate-descent grid search over the given free variables. `assemble`
// maps variable values into a full profile, so the same machinery serves
// per-node and per-level searches. Passes repeat until a full sweep makes
// no improvement, then each refinement round re-sweeps a 21-point local
// grid whose spacing shrinks tenfold.
struct GridSearch {
  std::function<double(const std::vector<double>&)> evaluate;
  int grid;
  int refine_rounds;

  std::pair<std::vector<double>, double> run(std::vector<double> vars) const {
    double best = evaluate(vars);
    const int pass_cap = 60;
    for (int pass = 0; pass < pass_cap; ++pass) {
      bool improved = false;
      for (size_t v = 0; v < vars.size(); ++v) {
        const double saved = vars[v];
        double local_best = best, local_arg = saved;
        for (int gidx = 0; gidx < grid; ++gidx) {
          vars[v] = static_cast<double>(gidx) / (grid - 1);
          const double so = evaluate(vars);
          if (so > local_best + 1e-15) {
            local_best = so;
            local_arg = vars[v];
          }
        }
        vars[v] = local_arg;
        if (local_best > best + 1e-15) {
          best = local_best;
          improved = true;
        }
      }
      if (!improved) break;
    }

    double span = 1.0 / (grid - 1);
    for (int round = 0; round < refine_rounds; ++round) {
      for (int pass = 0; pass < 2; ++pass) {
        for (size_t v = 0; v < vars.size(); ++v) {
          const double center = vars[v];
          double local_best = best, local_arg = center;
          for (int gidx = -10; gidx <= 10; ++gidx) {
            const double t = std::clamp(center + gidx * span / 10.0, 0.0, 1.0);
            vars[v] = t;
            const double so = evaluate(vars);
            if (so > local_best + 1e-15) {
              local_best = so;
              local_arg = t;
            }
          }
          vars[v] = local_arg;
          best = local_best;
        }
      }
      span /= 10.0;
    }
    return {vars, best};
  }
};

double threshold_beta(int d) { return -std::log1p(-1.0 / d); }  // -ln(1 - 1/d)

OptimalEffort brute_force_levels(const NetworkTopology& net, const ProductivityModel& model,
                                 const BalancedShape& shape, const OptimalEffortOptions& opts) {
  const int levels = shape.depth;  // free levels 1..D; leaves pinned at 1
  const auto assemble = [&](const std::vector<double>& vars) {
    EffortProfile x(net.node_count());
    for (int i = 1; i <= net.node_count(); ++i) {
      const int lvl = net.depth(i);
      x[i] = lvl <= levels ? vars[lvl - 1] : 1.0;
    }
    return x;
  };
  GridSearch search{[&](const std::vector<double>& vars) {
                      return social_output(net, model, assemble(vars));
                    },
                    opts.grid, opts.refine_rounds};

  std::vector<double> vars(levels, 1.0);
  double best_so = -1.0;
  // Exhaustive level grid when cheap; otherwise coordinate descent from the
  // all-ones and all-zeros corners.
  double combos = 1.0;
  for (int l = 0; l < levels; ++l) combos *= opts.grid;
  if (combos <= 2e6) {
    std::vector<int> idx(levels, 0);
    std::vector<double> cur(levels, 0.0);
    while (true) {
      for (int l = 0; l < levels; ++l) cur[l] = static_cast<double>(idx[l]) / (opts.grid - 1);
      const double so = social_output(net, model, assemble(cur));
      if (so > best_so + 1e-15) {
        best_so = so;
        vars = cur;
      }
      int l = 0;
      while (l < levels && ++idx[l] == opts.grid) idx[l++] = 0;
      if (l == levels) break;
    }
    auto [refined, so] = GridSearch{search.evaluate, opts.grid, opts.refine_rounds}.run(vars);
    vars = refined;
    best_so = so;
  } else {
    auto [v1, so1] = search.run(std::vector<double>(levels, 1.0));
    auto [v0, so0] = search.run(std::vector<double>(levels, 0.0));
    vars = so0 > so1 ? v0 : v1;
    best_so = std::max(so0, so1);
  }
  return {assemble(vars), best_so, OptimalMethod::BruteForce};
}

OptimalEffort brute_force_nodes(const NetworkTopology& net, const ProductivityModel& model,
                                const OptimalEffortOptions& opts) {
  if (net.node_count() > 12)
    fail(ErrorCode::TooLarge,
         "brute-force optimum is capped at 12 nodes for non-balanced networks");
  std::vector<int> free_nodes;
  for (int i = 1; i <= net.node_count(); ++i)
    if (!net.is_leaf(i)) free_nodes.push_back(i);

  const auto assemble = [&](const std::vector<double>& vars) {
    EffortProfile x = EffortProfile::ones(net.node_count());
    for (size_t k = 0; k < free_nodes.size(); ++k) x[free_nodes[k]] = vars[k];
    return x;
  };
  GridSearch search{[&](const std::vector<double>& vars) {
                      return social_output(net, model, assemble(vars));
                    },
                    opts.grid, opts.refine_rounds};
  auto [v1, so1] = search.run(std::vector<double>(free_nodes.size(), 1.0));
  auto [v0, so0] = search.run(std::vector<double>(free_nodes.size(), 0.0));
  const auto& vars = so0 > so1 ? v0 : v1;
  return {assemble(vars), std::max(so0, so1), OptimalMethod::BruteForce};
}

}  // namespace

OptimalEffort optimal_effort(const NetworkTopology& net, const ProductivityModel& model,
                             const OptimalEffortOptions& opts) {
  if (opts.grid < 2) fail(ErrorCode::ValidationError, "grid needs at least two points");
  const int n = net.node_count();
  if (n == 1) {
    EffortProfile x = EffortProfile::ones(1);
    return {x, social_output(net, model, x), OptimalMethod::BruteForce};
  }

  const auto shape = net.kind() == GraphKind::Hierarchy ? net.balanced_shape() : std::nullopt;
  const bool plain_ep =
      model.is_ep() && model.ep_params().mu.kind == Mu::Kind::One;

  if (shape && plain_ep && !opts.force_brute_force && shape->degree >= 2) {
    const double beta = model.ep_params().beta;
    const double thr = threshold_beta(shape->degree);
    if (beta >= thr) {
      EffortProfile x(n);
      for (int i = 1; i <= n; ++i) x[i] = net.is_leaf(i) ? 1.0 : 0.0;
      return {x, social_output(net, model, x), OptimalMethod::ClosedFormBalanced};
    }
    if (shape->depth == 1) {
      EffortProfile x = EffortProfile::ones(n);
      return {x, social_output(net, model, x), OptimalMethod::ClosedFormFlat};
    }
  }

  if (shape) return brute_force_levels(net, model, *shape, opts);
  return brute_force_nodes(net, model, opts);
}

PoaReport poa(const NetworkTopology& net, const ProductivityModel& model,
              const DirectPayoff& payoff_fn, const RewardScheme& H,
              const OptimalEffortOptions& opt_opts, const FixedPointOptions& fp_opts) {
  const bool tree_route = net.kind() == GraphKind::Hierarchy && model.is_ep();
  const EquilibriumResult eq = tree_route
                                   ? solve_equilibrium_tree(net, model, payoff_fn, H)
                                   : solve_equilibrium_fixed_point(net, model, payoff_fn, H, fp_opts);
  const OptimalEffort opt = optimal_effort(net, model, opt_opts);

  PoaReport report;
  report.so_equilibrium = eq.social_output;
  report.so_optimal = opt.so;
  report.x_star = eq.x_star;
  report.x_opt = opt.x;
  report.optimal_method = opt.method;
  report.multiplicity_note = eq.multiplicity_flagged();
  if (eq.social_output <= 0.0) {
    report.degenerate = true;
    report.poa = std::numeric_limits<double>::infinity();
  } else {
    report.poa = opt.so / eq.social_output;
  }
  return report;
}

XiResult xi(double beta) {
  if (!(beta > 1.0))
    fail(ErrorCode::DomainError, "xi is defined for beta > 1; got " + std::to_string(beta));
  const auto r = [&](double x) { return x - 1.0 + std::exp(-beta * x) / beta; };
  // r(0) = 1/beta - 1 < 0, r(1) = e^(-beta)/beta > 0, r' = 1 - e^(-beta x) >= 0.
  double lo = 0.0, hi = 1.0;
  double flo = r(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = r(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  XiResult result;
  result.value = 0.5 * (lo + hi);
  result.near_degenerate = beta - 1.0 < 1e-6;
  if (std::fabs(r(result.value)) > 1e-12)
    fail(ErrorCode::NoConvergence, "xi bisection residual above 1e-12");
  return result;
}

BalancedBoundReport poa_bound_balanced(int d, int D, double beta) {
  if (d < 1 || D < 1)
    fail(ErrorCode::DomainError, "balanced bound needs d >= 1 and D >= 1");
  if (!(beta >= 0.0)) fail(ErrorCode::DomainError, "beta must be >= 0");

  BalancedBoundReport report;
  report.d = d;
  report.D = D;
  report.beta = beta;
  report.xi = std::numeric_limits<double>::quiet_NaN();
  if (beta <= 1.0) {
    report.bound = 1.0;
    return report;
  }

  const double xival = xi(beta).value;
  report.xi = xival;
  const auto phi = [&](double m) {
    const double floor_arm = (1.0 + std::log(m * beta)) / beta;
    const double linear_arm = m * beta + (1.0 - m * beta) * xival;
    return std::max(floor_arm, linear_arm);
  };
  double t = phi(static_cast<double>(d));
  report.phi_sequence.push_back(t);
  for (int k = 2; k <= D; ++k) {
    t = phi(d * t);
    report.phi_sequence.push_back(t);
  }
  const double raw = std::pow(static_cast<double>(d), D) / t;
  report.clamped = raw < 1.0;
  report.bound = std::max(raw, 1.0);
  return report;
}

}  // namespace effortnet
