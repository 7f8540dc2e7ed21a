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

#include "effortnet/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "effortnet/rng.hpp"

namespace effortnet {

namespace {

constexpr double kRootTol = 1e-12;

// Precomputed sparse structure of g: for every stored share (i, j) the
// separating node set R_j \ R_i (contains i itself).
struct UpdateTerm {
  int j;
  double h;
  std::vector<int> separators;
};

struct UpdatePlan {
  std::vector<std::vector<UpdateTerm>> rows;  // 1-based
};

UpdatePlan build_plan(const NetworkTopology& net, const RewardScheme& H) {
  UpdatePlan plan;
  plan.rows.assign(net.node_count() + 1, {});
  for (int i = 1; i <= net.node_count(); ++i) {
    for (const auto& [j, h] : H.shares_of(i)) {
      if (h == 0.0) continue;
      const auto& rj = net.influencers(j);
      const auto& ri = net.influencers(i);
      UpdateTerm term{j, h, {}};
      std::set_difference(rj.begin(), rj.end(), ri.begin(), ri.end(),
                          std::back_inserter(term.separators));
      plan.rows[i].push_back(std::move(term));
    }
  }
  return plan;
}

// g_i over a raw (possibly out-of-[0,1]) effort vector; used by the update
// map and by finite differences on G.
double g_value(const NetworkTopology& net, const ProductivityModel& model, const UpdatePlan& plan,
               const std::vector<double>& x, int i) {
  const bool ep = model.is_ep();
  const double beta = ep ? model.ep_params().beta : 0.0;
  double total = 0.0;
  for (const auto& term : plan.rows[i]) {
    double rate = 1.0;
    for (int k : term.separators) {
      if (!ep && k == i) continue;  // linear rate is independent of own effort
      rate *= ep ? model.ep_params().mu(net.child_count(k)) * std::exp(-beta * x[k])
                 : 1.0 - x[k];
    }
    total += term.h * x[term.j] * (ep ? beta * rate : rate);
  }
  return total;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// S_i = sum_{j in T_i} h_ij q_ij x_j where q_ij strips the own-effort
// exponential out of p_ij, accumulated along a subtree walk. The scalar
// stationarity condition at node i then reads x = [1 - beta/(1+b) S_i
// e^(-beta x)]^+.
double subtree_share_sum(const NetworkTopology& net, const ProductivityModel& model,
                         const RewardScheme& H, const std::vector<double>& x, int i) {
  const EpParams& params = model.ep_params();
  double total = 0.0;
  std::vector<std::pair<int, double>> stack;
  const double mu_i = params.mu(net.child_count(i));
  for (int c : net.children(i)) stack.push_back({c, mu_i});
  while (!stack.empty()) {
    auto [k, q] = stack.back();
    stack.pop_back();
    const double h = H.at(i, k);
    if (h != 0.0) total += h * q * x[k];
    const double factor = q * params.mu(net.child_count(k)) * std::exp(-params.beta * x[k]);
    for (int c : net.children(k)) stack.push_back({c, factor});
  }
  return total;
}

void require_ep_hierarchy(const NetworkTopology& net, const ProductivityModel& model,
                          const char* what) {
  if (net.kind() != GraphKind::Hierarchy)
    fail(ErrorCode::ValidationError, std::string(what) + " requires a hierarchy");
  if (!model.is_ep())
    fail(ErrorCode::ValidationError, std::string(what) + " requires the EP productivity model");
}

// Bisection on a bracketed sign change; g is convex so 200 halvings of a
// unit interval put the root at double resolution.
template <typename Fn>
double bisect_root(const Fn& g, double lo, double hi) {
  double flo = g(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = g(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EffortProfile effort_update(const NetworkTopology& net, const ProductivityModel& model,
                            const DirectPayoff& payoff_fn, const RewardScheme& H,
                            const EffortProfile& x) {
  const UpdatePlan plan = build_plan(net, H);
  EffortProfile out(net.node_count());
  for (int i = 1; i <= net.node_count(); ++i)
    out[i] = clamp01(payoff_fn.ell(g_value(net, model, plan, x.raw(), i)));
  return out;
}

EffortProfile effort_update_ep_tree(const NetworkTopology& net, const ProductivityModel& model,
                                    const DirectPayoff& payoff_fn, const RewardScheme& H,
                                    const EffortProfile& x) {
  require_ep_hierarchy(net, model, "effort_update_ep_tree");
  const double beta = model.ep_params().beta;
  const double one_b = 1.0 + payoff_fn.b();
  EffortProfile out(net.node_count());
  for (int i = 1; i <= net.node_count(); ++i) {
    const double s = subtree_share_sum(net, model, H, x.raw(), i);
    out[i] = clamp01(1.0 - beta / one_b * std::exp(-beta * x[i]) * s);
  }
  return out;
}

static ScalarBestResponse scalarbest_impl(double A, double beta,
                                          const std::function<double(double)>& node_payoff) {
  ScalarBestResponse result;
  if (A <= 0.0) {
    result.candidates = {1.0};
    result.chosen = 1.0;
    return result;
  }
  const auto g = [&](double x) { return x - 1.0 + A * std::exp(-beta * x); };
  const double g0 = g(0.0);  // g(1) = A e^(-beta) > 0 always

  std::vector<double>& roots = result.candidates;
  if (std::fabs(g0) <= kRootTol) roots.push_back(0.0);

  const double ab = A * beta;
  if (ab > 1.0) {
    const double xc = std::log(ab) / beta;  // unique minimum of the convex g
    if (xc < 1.0) {
      const double gc = g(xc);
      if (std::fabs(gc) <= kRootTol) {
        roots.push_back(xc);
      } else if (gc < 0.0) {
        if (g0 > kRootTol) roots.push_back(bisect_root(g, 0.0, xc));
        roots.push_back(bisect_root(g, xc, 1.0));
      }
    }
    // xc >= 1: g decreases over [0,1] toward g(1) > 0, so no interior root.
  } else if (g0 < -kRootTol) {
    roots.push_back(bisect_root(g, 0.0, 1.0));  // g increasing: single root
  }

  if (g0 > kRootTol) roots.push_back(0.0);  // corner: effort pinned at zero

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::fabs(a - b) <= 1e-9; }),
              roots.end());
  if (roots.empty())
    fail(ErrorCode::NoConvergence, "scalar best response found no candidate; bracketing bug");

  double best_u = node_payoff(roots[0]);
  result.chosen = roots[0];
  for (size_t k = 1; k < roots.size(); ++k) {
    const double u = node_payoff(roots[k]);
    if (u >= best_u - 1e-12) {  // ties break toward the larger effort
      result.chosen = roots[k];
      best_u = std::max(best_u, u);
    }
  }
  return result;
}

ScalarBestResponse scalar_best_response(double A, double beta, double b,
                                        const std::function<double(double)>& node_payoff) {
  if (!(A >= 0.0)) fail(ErrorCode::ValidationError, "accumulated share coefficient A must be >= 0");
  if (!(beta >= 0.0) || !(b >= 0.0)) fail(ErrorCode::ValidationError, "beta and b must be >= 0");
  return scalarbest_impl(A, beta, node_payoff);
}

EquilibriumResult solve_equilibrium_tree(const NetworkTopology& net,
                                         const ProductivityModel& model,
                                         const DirectPayoff& payoff_fn, const RewardScheme& H) {
  require_ep_hierarchy(net, model, "solve_equilibrium_tree");
  const int n = net.node_count();
  const double beta = model.ep_params().beta;
  const double one_b = 1.0 + payoff_fn.b();

  EquilibriumResult result;
  result.method = SolveMethod::TreeBackwardInduction;
  result.x_star = EffortProfile(n);

  // Topological numbering puts every subtree at higher indices, so a single
  // descending sweep is leaves-to-root backward induction.
  for (int i = n; i >= 1; --i) {
    const double s = subtree_share_sum(net, model, H, result.x_star.raw(), i);
    const double a = beta / one_b * s;
    const auto relative_payoff = [&](double t) {
      return payoff_fn.f(t) + s * std::exp(-beta * t);
    };
    ScalarBestResponse sbr = scalar_best_response(a, beta, payoff_fn.b(), relative_payoff);
    result.x_star[i] = sbr.chosen;
    if (sbr.candidates.size() > 1) result.multiplicity[i] = sbr.candidates;
  }

  const EffortProfile fx = effort_update(net, model, payoff_fn, H, result.x_star);
  result.residual = max_abs_diff(result.x_star, fx);
  result.outputs = node_outputs(net, model, result.x_star);
  result.social_output = social_output(net, model, result.x_star);
  return result;
}

EquilibriumResult solve_equilibrium_fixed_point(const NetworkTopology& net,
                                                const ProductivityModel& model,
                                                const DirectPayoff& payoff_fn,
                                                const RewardScheme& H,
                                                const FixedPointOptions& opts) {
  const int n = net.node_count();
  if (opts.starts < 1) fail(ErrorCode::ValidationError, "need at least one start");
  const UpdatePlan plan = build_plan(net, H);

  const auto apply_F = [&](const EffortProfile& x) {
    EffortProfile out(n);
    for (int i = 1; i <= n; ++i) out[i] = clamp01(payoff_fn.ell(g_value(net, model, plan, x.raw(), i)));
    return out;
  };

  std::vector<EffortProfile> starts;
  starts.push_back(EffortProfile::ones(n));
  if (opts.starts > 1) {
    EffortProfile corner(n);
    for (int i = 1; i <= n; ++i) corner[i] = net.influencees(i).empty() ? 1.0 : 0.0;
    starts.push_back(corner);
  }
  std::mt19937_64 rng(opts.seed);
  while (static_cast<int>(starts.size()) < opts.starts) {
    EffortProfile x(n);
    for (int i = 1; i <= n; ++i) x[i] = uniform01(rng);
    starts.push_back(x);
  }

  struct Limit {
    EffortProfile x;
    double residual;
    int iterations;
    int start_index;
    double so;
  };
  std::vector<Limit> limits;
  double last_residual = 0.0;
  for (int s = 0; s < static_cast<int>(starts.size()); ++s) {
    EffortProfile x = starts[s];
    bool converged = false;
    for (int it = 1; it <= opts.max_iter; ++it) {
      EffortProfile fx = apply_F(x);
      const double delta = max_abs_diff(x, fx);
      if (delta <= opts.tol) {
        // x itself has residual delta <= tol; return it rather than fx so
        // the reported residual is exactly what was measured.
        limits.push_back({x, delta, it, s, social_output(net, model, x)});
        converged = true;
        break;
      }
      x = std::move(fx);
      last_residual = delta;
    }
    if (!converged) last_residual = max_abs_diff(x, apply_F(x));
  }

  if (limits.empty())
    fail(ErrorCode::NoConvergence,
         "no start converged within " + std::to_string(opts.max_iter) +
             " iterations; last residual " + std::to_string(last_residual));

  bool multiple = false;
  for (size_t a = 0; a + 1 < limits.size() && !multiple; ++a)
    for (size_t b = a + 1; b < limits.size(); ++b)
      if (max_abs_diff(limits[a].x, limits[b].x) > 100.0 * opts.tol) {
        multiple = true;
        break;
      }

  const Limit* best = &limits[0];
  for (const Limit& lim : limits)
    if (lim.so > best->so + 1e-15) best = &lim;

  EquilibriumResult result;
  result.method = SolveMethod::FixedPointIteration;
  result.x_star = best->x;
  result.residual = best->residual;
  result.iterations = best->iterations;
  result.multiple_equilibria = multiple;
  result.seed = opts.seed;
  result.starts_total = static_cast<int>(starts.size());
  result.starts_converged = static_cast<int>(limits.size());
  result.outputs = node_outputs(net, model, result.x_star);
  result.social_output = best->so;
  return result;
}

double h_max(const NetworkTopology& net, const RewardScheme& H) {
  double m = 0.0;
  for (int i = 1; i <= net.node_count(); ++i) m = std::max(m, H.row_sum(i));
  return m;
}

UniquenessCertificate uniqueness_certificate_tree(const NetworkTopology& net,
                                                  const EpParams& params, const RewardScheme& H) {
  if (net.kind() != GraphKind::Hierarchy)
    fail(ErrorCode::ValidationError, "analytic certificate requires a hierarchy");
  UniquenessCertificate cert;
  cert.kind = CertificateKind::TreeAnalytic;
  cert.h_max = h_max(net, H);
  cert.observed = params.beta * params.beta * cert.h_max;
  cert.threshold = 1.0 + params.b;
  cert.verdict = cert.observed < cert.threshold ? Verdict::Unique : Verdict::Inconclusive;
  return cert;
}

Matrix jacobian_G(const NetworkTopology& net, const ProductivityModel& model,
                  const DirectPayoff& payoff_fn, const RewardScheme& H, const EffortProfile& x,
                  JacobianMode mode, double fd_step) {
  const int n = net.node_count();
  const UpdatePlan plan = build_plan(net, H);
  Matrix jac(n, n);

  if (mode == JacobianMode::Analytic) {
    if (!model.is_ep())
      fail(ErrorCode::ValidationError, "analytic Jacobian is available for the EP model only");
    const EpParams& params = model.ep_params();
    const double beta = params.beta;
    const double one_b = 1.0 + payoff_fn.b();
    for (int i = 1; i <= n; ++i) {
      for (const auto& term : plan.rows[i]) {
        double rho = 1.0;
        for (int k : term.separators)
          rho *= params.mu(net.child_count(k)) * std::exp(-beta * x[k]);
        const double scaled = term.h * rho;
        // d rho / d x_k = -beta rho for every separator (i included);
        // the x_j factor contributes its own column.
        for (int k : term.separators)
          jac(i - 1, k - 1) += beta * beta / one_b * scaled * x[term.j];
        jac(i - 1, term.j - 1) -= beta / one_b * scaled;
      }
    }
    return jac;
  }

  if (!(fd_step > 0.0)) fail(ErrorCode::ValidationError, "fd_step must be positive");
  std::vector<double> base = x.raw();
  for (int m2 = 1; m2 <= n; ++m2) {
    std::vector<double> hi = base, lo = base;
    hi[m2] += fd_step;
    lo[m2] -= fd_step;
    for (int i = 1; i <= n; ++i) {
      const double gp = payoff_fn.ell(g_value(net, model, plan, hi, i));
      const double gm = payoff_fn.ell(g_value(net, model, plan, lo, i));
      jac(i - 1, m2 - 1) = (gp - gm) / (2.0 * fd_step);
    }
  }
  return jac;
}

UniquenessCertificate uniqueness_certificate_general(const NetworkTopology& net,
                                                     const ProductivityModel& model,
                                                     const DirectPayoff& payoff_fn,
                                                     const RewardScheme& H,
                                                     const GeneralCertificateOptions& opts) {
  const int n = net.node_count();
  UniquenessCertificate cert;
  cert.kind = CertificateKind::SampledSpectral;
  cert.heuristic = true;
  cert.samples = opts.samples;
  cert.seed = opts.seed;
  cert.threshold = 1.0 - 1e-6;
  cert.worst_sample = EffortProfile(n);

  const JacobianMode mode = model.is_ep() ? JacobianMode::Analytic : JacobianMode::FiniteDifference;
  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    EffortProfile x(n);
    for (int i = 1; i <= n; ++i) x[i] = uniform01(rng);
    const Matrix jac = jacobian_G(net, model, payoff_fn, H, x, mode);
    const SpectralNorm sn = spectral_norm(jac);
    if (sn.value > cert.observed) {
      cert.observed = sn.value;
      cert.worst_sample = x;
    }
  }
  cert.verdict = cert.observed < cert.threshold ? Verdict::Unique : Verdict::Inconclusive;
  return cert;
}

}  // namespace effortnet
