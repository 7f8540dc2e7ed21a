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
#include <functional>
#include <map>
#include <vector>

#include "effortnet/linalg.hpp"
#include "effortnet/model.hpp"

namespace effortnet {

enum class SolveMethod { TreeBackwardInduction, FixedPointIteration };

struct EquilibriumResult {
  EffortProfile x_star;
  std::vector<double> outputs;  // y_i = p_i x_i, 1-based
  double social_output = 0.0;
  double residual = 0.0;  // ||x* - F(x*)||_inf
  int iterations = 0;     // 0 for the tree route
  SolveMethod method = SolveMethod::TreeBackwardInduction;

  /// Nodes whose scalar stationarity equation admitted more than one KKT
  /// candidate, with the full candidate list (tree route).
  std::map<int, std::vector<double>> multiplicity;

  /// Fixed-point route: distinct limits were reached from different starts.
  bool multiple_equilibria = false;
  uint64_t seed = 0;
  int starts_total = 0;
  int starts_converged = 0;

  bool multiplicity_flagged() const { return !multiplicity.empty() || multiple_equilibria; }
};

struct FixedPointOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  int starts = 16;
  uint64_t seed = 42;
};

/// Effort update function F = T o ell o g evaluated through the general
/// formulation: g_i = sum_{j in E_i} h_ij x_j (-(1/p_i) dp_j/dx_i).
/// Works for both graph kinds and both productivity models.
EffortProfile effort_update(const NetworkTopology& net, const ProductivityModel& model,
                            const DirectPayoff& payoff_fn, const RewardScheme& H,
                            const EffortProfile& x);

/// The same map evaluated through the hierarchy-specific closed form
/// [1 - beta/(1+b) sum_j h_ij p_ij x_j]^+, with the per-path products
/// accumulated by a subtree walk. EP hierarchies only. Kept as an
/// independent second route for consistency checks.
EffortProfile effort_update_ep_tree(const NetworkTopology& net, const ProductivityModel& model,
                                    const DirectPayoff& payoff_fn, const RewardScheme& H,
                                    const EffortProfile& x);

struct ScalarBestResponse {
  double chosen = 0.0;
  std::vector<double> candidates;  // ascending, deduplicated
};

/// All KKT candidates of the scalar condition x = [1 - A e^(-beta x)]^+ on
/// [0,1]: the roots of g(x) = x - 1 + A e^(-beta x) (g is convex, so at most
/// two) plus the corner x = 0 whenever g(0) > 0. The utility-maximizing
/// candidate is chosen; ties break toward the larger effort.
ScalarBestResponse scalar_best_response(double A, double beta, double b,
                                        const std::function<double(double)>& node_payoff);

/// Leaves-to-root backward induction for EP hierarchies; O(n^2) worst case.
EquilibriumResult solve_equilibrium_tree(const NetworkTopology& net,
                                         const ProductivityModel& model,
                                         const DirectPayoff& payoff_fn, const RewardScheme& H);

/// Multi-start iteration of x <- F(x). The first start is all-ones (the
/// H = 0 equilibrium), the second puts zero effort at every internal node
/// and one at the leaves (reaches boundary-clamped fixed points that repel
/// the iteration), the rest are seeded uniform draws. Throws NoConvergence
/// only when no start converges; start-level failures are reported in the
/// result. When distinct limits are found the flag is set and the limit with
/// the highest social output is returned (ties to the lowest start index).
EquilibriumResult solve_equilibrium_fixed_point(const NetworkTopology& net,
                                                const ProductivityModel& model,
                                                const DirectPayoff& payoff_fn,
                                                const RewardScheme& H,
                                                const FixedPointOptions& opts = {});

/// max_i sum_{j in E_i} h_ij.
double h_max(const NetworkTopology& net, const RewardScheme& H);

enum class CertificateKind { TreeAnalytic, SampledSpectral };
enum class Verdict { Unique, Inconclusive };

struct UniquenessCertificate {
  CertificateKind kind = CertificateKind::TreeAnalytic;
  Verdict verdict = Verdict::Inconclusive;
  double h_max = 0.0;     // tree route
  double observed = 0.0;  // tree: beta^2 h_max; sampled: max spectral norm seen
  double threshold = 0.0;  // tree: 1 + b; sampled: 1 - 1e-6
  int samples = 0;
  uint64_t seed = 0;
  EffortProfile worst_sample;  // sampled route: the maximizing draw
  bool heuristic = false;      // sampled route under-approximates the supremum
};

/// Analytic contraction certificate for EP hierarchies:
/// Unique iff beta^2 h_max < 1 + b (strict).
UniquenessCertificate uniqueness_certificate_tree(const NetworkTopology& net,
                                                  const EpParams& params, const RewardScheme& H);

enum class JacobianMode { Analytic, FiniteDifference };

/// Jacobian of G = ell o g at x. Analytic mode requires the EP model;
/// finite differences are central with the given step and are applied to G
/// directly (no truncation), so both modes agree wherever G is smooth.
Matrix jacobian_G(const NetworkTopology& net, const ProductivityModel& model,
                  const DirectPayoff& payoff_fn, const RewardScheme& H, const EffortProfile& x,
                  JacobianMode mode, double fd_step = 1e-6);

struct GeneralCertificateOptions {
  int samples = 1000;
  uint64_t seed = 42;
};

/// Sampled contraction check for the general model: draws points uniformly
/// in [0,1]^n, computes |grad G| at each and compares the maximum against 1.
/// A sampled under-approximation of the supremum: Unique is heuristic,
/// Inconclusive is not a disproof.
UniquenessCertificate uniqueness_certificate_general(const NetworkTopology& net,
                                                     const ProductivityModel& model,
                                                     const DirectPayoff& payoff_fn,
                                                     const RewardScheme& H,
                                                     const GeneralCertificateOptions& opts = {});

}  // namespace effortnet
