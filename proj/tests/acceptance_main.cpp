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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exit code is the number of failures. Expected values come
// from closed-form arithmetic or from the independent oracles in
// test_support.hpp (vertex enumeration, scanning bisection), never from the
// code paths under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "effortnet/design.hpp"
#include "effortnet/equilibrium.hpp"
#include "effortnet/welfare.hpp"
#include "test_support.hpp"

using namespace effortnet;
using namespace testsupport;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& label, double time_limit_s,
               const std::function<void(Check&)>& body) {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (elapsed >= time_limit_s) check.require(false, "runtime limit exceeded");
  if (!check.ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", id,
              label.c_str(), elapsed, check.detail.tellp() > 0 ? " -- " : "",
              check.detail.str().c_str());
}

}  // namespace

int main() {
  criterion(1, "FLAT anarchy grows like (n-1)/2 at beta = ln(n-1) with no sharing", 1.0,
            [](Check& check) {
              for (int n : {3, 5, 7, 11}) {
                const auto net = flat_tree(n);
                const auto model =
                    ProductivityModel::ep(EpParams::validated(std::log(n - 1.0), 0.0));
                const auto rep = poa(net, model, DirectPayoff(0.0), RewardScheme::zero(n));
                check.require(std::fabs(rep.poa - (n - 1.0) / 2.0) <= 1e-9,
                              "n=" + std::to_string(n) + " poa=" + std::to_string(rep.poa));
              }
            });

  criterion(2, "knife-edge star: two KKT candidates, argmax selection, flagged", 0.1,
            [](Check& check) {
              const auto net = flat_tree(3);
              const auto model = ProductivityModel::ep(EpParams::validated(2.0, 0.0));
              RewardScheme H(3);
              H.set(net, 1, 2, 0.25);
              H.set(net, 1, 3, 0.25);
              const auto eq = solve_equilibrium_tree(net, model, DirectPayoff(0.0), H);
              check.require(eq.multiplicity.count(1) == 1, "root not flagged");
              if (eq.multiplicity.count(1)) {
                const auto& cands = eq.multiplicity.at(1);
                check.require(cands.size() == 2,
                              "expected 2 candidates, got " + std::to_string(cands.size()));
                check.require(std::fabs(cands.front() - 0.0) <= 1e-9, "low candidate not 0");
                check.require(std::fabs(cands.back() - 0.797) <= 5e-4, "high candidate off");
              }
              check.require(std::fabs(eq.x_star[1] - 0.797) <= 5e-4, "selected wrong candidate");
            });

  criterion(3, "good communication: designed shares support the exact optimum", 30.0,
            [](Check& check) {
              for (const auto& [d, D] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}}) {
                const auto net = balanced_tree(d, D);
                for (double beta : {0.3, 0.8, 1.0}) {
                  const auto params = EpParams::validated(beta, 0.0);
                  const auto res = design_reward_scheme(net, params);
                  const std::string tag =
                      "d=" + std::to_string(d) + " D=" + std::to_string(D) + " beta=" + std::to_string(beta);
                  check.require(res.guarantee == DesignGuarantee::OptimalSupported,
                                tag + ": not optimal-supported");
                  const auto model = ProductivityModel::ep(params);
                  const double oracle_so = vertex_optimum(net, model).second;
                  const double measured = oracle_so / res.achieved_so;
                  check.require(std::fabs(measured - 1.0) <= 1e-6,
                                tag + ": poa=" + std::to_string(measured));
                }
              }
            });

  criterion(4, "bad communication: measured PoA never exceeds the closed-form bound", 120.0,
            [](Check& check) {
              for (const auto& [d, D] :
                   std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {6, 1}}) {
                const auto net = balanced_tree(d, D);
                for (int k = 1; k <= 20; ++k) {
                  const double beta = 1.0 + 0.15 * k;  // 20 samples in (1, 4]
                  const auto params = EpParams::validated(beta, 0.0);
                  const auto res = design_reward_scheme(net, params);
                  const auto model = ProductivityModel::ep(params);
                  const double oracle_so = vertex_optimum(net, model).second;
                  const double measured = oracle_so / res.achieved_so;
                  const double bound = poa_bound_balanced(d, D, beta).bound;
                  check.require(measured <= bound + 1e-6,
                                "d=" + std::to_string(d) + " D=" + std::to_string(D) +
                                    " beta=" + std::to_string(beta) + ": poa " +
                                    std::to_string(measured) + " > bound " + std::to_string(bound));
                }
              }
              // Empirical tightness for the flat 6-ary tree on [1.5, 4].
              const auto net = flat_tree(7);
              for (int k = 0; k <= 10; ++k) {
                const double beta = 1.5 + 0.25 * k;
                const auto params = EpParams::validated(beta, 0.0);
                const auto res = design_reward_scheme(net, params);
                const auto model = ProductivityModel::ep(params);
                const double measured = vertex_optimum(net, model).second / res.achieved_so;
                const double bound = poa_bound_balanced(6, 1, beta).bound;
                check.require((bound - measured) / measured < 0.05,
                              "flat gap at beta=" + std::to_string(beta));
              }
            });

  criterion(5, "contraction ratio 0.9 solvers agree; ratio 1.5 breaks somewhere", 60.0,
            [](Check& check) {
              std::mt19937_64 rng(2024);
              int exhibits = 0;
              for (int trial = 0; trial < 100; ++trial) {
                // Mix of generic trees and stars inside the bistable window.
                const bool star = trial % 4 == 0;
                const int n = star ? 3 + static_cast<int>(rng() % 6)
                                   : 3 + static_cast<int>(rng() % 18);
                const auto tree = star ? flat_tree(n) : random_tree(rng, n, trial % 2 == 0);
                const double beta =
                    star ? 1.41 + 0.08 * uniform01(rng) : 1.1 + 1.1 * uniform01(rng);
                const double b = trial % 5 == 0 ? 0.3 * uniform01(rng) : 0.0;
                auto H0 = random_scheme(rng, tree, 1.0, star ? 1.0 : 0.6);
                if (h_max(tree, H0) <= 0.0) continue;

                // Ratio 0.9: analytic certificate holds, both routes agree.
                const auto model = ProductivityModel::ep(EpParams::validated(beta, b));
                const auto H_c = scaled_to_ratio(tree, H0, beta, b, 0.9);
                check.require(uniqueness_certificate_tree(tree, model.ep_params(), H_c).verdict ==
                                  Verdict::Unique,
                              "ratio-0.9 certificate not unique");
                const auto eq_tree = solve_equilibrium_tree(tree, model, DirectPayoff(b), H_c);
                const auto eq_fp = solve_equilibrium_fixed_point(tree, model, DirectPayoff(b), H_c);
                check.require(max_abs_diff(eq_tree.x_star, eq_fp.x_star) <= 1e-8,
                              "trial " + std::to_string(trial) + ": routes disagree by " +
                                  std::to_string(max_abs_diff(eq_tree.x_star, eq_fp.x_star)));

                // Ratio 1.5: the certificate must be inconclusive, and at
                // least one instance must show start dependence or fail to
                // converge.
                const auto H_h = scaled_to_ratio(tree, H0, beta, b, 1.5);
                check.require(uniqueness_certificate_tree(tree, model.ep_params(), H_h).verdict ==
                                  Verdict::Inconclusive,
                              "ratio-1.5 certificate not inconclusive");
                try {
                  const auto hot = solve_equilibrium_fixed_point(tree, model, DirectPayoff(b), H_h,
                                                                 {1e-10, 20000, 16, 42});
                  if (hot.multiple_equilibria || hot.starts_converged < hot.starts_total)
                    ++exhibits;
                } catch (const Error&) {
                  ++exhibits;  // NoConvergence counts as an exhibit
                }
              }
              check.require(exhibits >= 1, "no instance exhibited multiplicity at ratio 1.5");
            });

  criterion(6, "general update map matches the hierarchy closed form", 10.0, [](Check& check) {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 29);
      const auto tree = random_tree(rng, n, trial % 2 == 0);
      const auto model = ProductivityModel::ep(EpParams::validated(
          3.0 * uniform01(rng), 0.5 * uniform01(rng), trial % 3 == 0 ? Mu::power(0.9) : Mu::one()));
      const DirectPayoff f(model.ep_params().b);
      const auto H = random_scheme(rng, tree, 2.0);
      const auto x = random_profile(rng, n);
      const double gap = max_abs_diff(effort_update(tree, model, f, H, x),
                                      effort_update_ep_tree(tree, model, f, H, x));
      check.require(gap <= 1e-12, "trial " + std::to_string(trial) + ": gap " + std::to_string(gap));
    }
  });

  criterion(7, "analytic gradients match central finite differences", 10.0, [](Check& check) {
    std::mt19937_64 rng(909);
    const double step = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 12);
      const auto tree = random_tree(rng, n, trial % 2 == 0);
      const auto model = ProductivityModel::ep(
          EpParams::validated(0.2 + 2.3 * uniform01(rng), 0.5 * uniform01(rng)));
      const DirectPayoff f(model.ep_params().b);
      const auto H = random_scheme(rng, tree, 1.5);
      auto x = random_profile(rng, n);
      for (int i = 1; i <= n; ++i) x[i] = 0.05 + 0.9 * x[i];

      for (int i = 1; i <= n; ++i) {
        const double analytic = payoff_gradient(tree, model, f, H, x, i);
        EffortProfile hi = x, lo = x;
        hi[i] += step;
        lo[i] -= step;
        const double fd =
            (payoff(tree, model, f, H, hi, i) - payoff(tree, model, f, H, lo, i)) / (2.0 * step);
        check.require(std::fabs(analytic - fd) <= 1e-5 * std::max(1.0, std::fabs(analytic)),
                      "payoff gradient off at node " + std::to_string(i));
      }
      const auto jac = jacobian_G(tree, model, f, H, x, JacobianMode::Analytic);
      const auto jfd = jacobian_G(tree, model, f, H, x, JacobianMode::FiniteDifference, step);
      for (int i = 0; i < n; ++i)
        check.require(std::fabs(jac(i, i) - jfd(i, i)) <=
                          1e-5 * std::max(1.0, std::fabs(jac(i, i))),
                      "Jacobian diagonal off at node " + std::to_string(i + 1));
    }
  });

  criterion(8, "LP and analytic stability agree; supported profiles round-trip", 60.0,
            [](Check& check) {
              std::mt19937_64 rng(1234);
              int agreed = 0, feasible = 0;
              for (int trial = 0; trial < 200; ++trial) {
                const int n = 2 + static_cast<int>(rng() % 14);
                const auto tree = random_tree(rng, n, trial % 2 == 0);
                const auto params =
                    EpParams::validated(0.2 + 0.75 * uniform01(rng), 0.4 * uniform01(rng));
                EffortProfile x(n);
                for (int i = 1; i <= n; ++i)
                  x[i] = tree.is_leaf(i) ? 1.0 : 0.4 + 0.6 * uniform01(rng);
                if (trial % 3 == 0)
                  for (int i = 1; i <= n; ++i) x[i] = uniform01(rng);

                const auto analytic = check_stability(tree, params, x);
                const auto lp = stability_lp(tree, params, x);
                if (analytic.stable == lp.stable) ++agreed;
                if (!lp.stable) continue;
                ++feasible;
                const auto model = ProductivityModel::ep(params);
                const auto eq =
                    solve_equilibrium_tree(tree, model, DirectPayoff(params.b), lp.H);
                check.require(max_abs_diff(eq.x_star, x) <= 1e-8,
                              "trial " + std::to_string(trial) + ": LP scheme does not round-trip");
                check.require(eq.multiplicity.empty(),
                              "trial " + std::to_string(trial) + ": equilibrium not unique");
              }
              check.require(agreed == 200,
                            "verdicts agreed on " + std::to_string(agreed) + "/200");
              check.require(feasible >= 40, "too few feasible instances to be meaningful");
            });

  criterion(9, "just past the threshold the optimum parks every internal node", 60.0,
            [](Check& check) {
              for (const auto& [d, D] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}}) {
                const auto net = balanced_tree(d, D);
                const double beta = -std::log1p(-1.0 / d) + 0.01;
                const auto model = ProductivityModel::ep(EpParams::validated(beta, 0.0));
                const auto best = optimal_effort(net, model, {101, 3, true});
                const std::string tag = "d=" + std::to_string(d) + " D=" + std::to_string(D);
                check.require(best.method == OptimalMethod::BruteForce, tag + ": not brute force");
                for (int i = 1; i <= net.node_count(); ++i) {
                  if (net.is_leaf(i))
                    check.require(best.x[i] == 1.0, tag + ": leaf below one");
                  else
                    check.require(best.x[i] <= 1e-3, tag + ": internal effort not parked");
                }
                const double closed = std::pow(static_cast<double>(d), D);
                check.require(std::fabs(best.so - closed) / closed <= 1e-3,
                              tag + ": so=" + std::to_string(best.so));
              }
            });

  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures;
}
