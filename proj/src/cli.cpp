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

#include "effortnet/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "effortnet/design.hpp"
#include "effortnet/equilibrium.hpp"
#include "effortnet/io.hpp"
#include "effortnet/welfare.hpp"

namespace effortnet {

namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* verdict_name(Verdict v) { return v == Verdict::Unique ? "unique" : "inconclusive"; }

const char* method_name(OptimalMethod m) {
  switch (m) {
    case OptimalMethod::ClosedFormBalanced: return "closed-form-balanced";
    case OptimalMethod::ClosedFormFlat: return "closed-form-flat";
    case OptimalMethod::BruteForce: return "brute-force";
  }
  return "?";
}

const char* guarantee_name(DesignGuarantee g) {
  switch (g) {
    case DesignGuarantee::OptimalSupported: return "optimal-supported";
    case DesignGuarantee::BalancedBounded: return "balanced-bounded";
    case DesignGuarantee::HeuristicBestFound: return "heuristic-best-found";
  }
  return "?";
}

void print_tree_certificate(std::ostream& out, const UniquenessCertificate& cert) {
  out << "certificate tree h_max=" << fmt(cert.h_max) << " beta2_hmax=" << fmt(cert.observed)
      << " limit=" << fmt(cert.threshold) << " verdict=" << verdict_name(cert.verdict) << "\n";
}

void print_sampled_certificate(std::ostream& out, const UniquenessCertificate& cert) {
  out << "certificate sampled observed=" << fmt(cert.observed) << " limit=" << fmt(cert.threshold)
      << " samples=" << cert.samples << " seed=" << cert.seed
      << " verdict=" << verdict_name(cert.verdict) << " heuristic=1\n";
}

void print_shares(std::ostream& out, const RewardScheme& H) {
  for (const auto& [i, j, value] : H.entries())
    out << "h " << i << " " << j << " " << fmt(value) << "\n";
}

struct SweepRange {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

bool parse_range(const std::string& text, SweepRange& range) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) return false;
  try {
    range.lo = std::stod(text.substr(0, first));
    range.hi = std::stod(text.substr(first + 1, second - first - 1));
    range.step = std::stod(text.substr(second + 1));
  } catch (...) {
    return false;
  }
  return range.step > 0.0 && range.lo <= range.hi;
}

int error_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::IterationLimit:
    case ErrorCode::LpNumericalFailure:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"effortnet: equilibrium efforts, social output, and reward-share design on influence networks"};
  app.require_subcommand(1);

  std::string network_path, efforts_path, out_path, method, beta_range;
  double tol = 1e-10;
  int max_iter = 100000;
  int starts = 16;
  std::uint64_t seed = 42;
  int grid = 101;
  int candidates = 500;
  int bound_d = 0, bound_D = 0;
  double bound_beta = 0.0;
  bool fixed_h = false, use_lp = false;

  auto add_network = [&](CLI::App* cmd) {
    cmd->add_option("network", network_path, "network JSON file")->required();
  };
  auto add_fp_options = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "fixed-point tolerance");
    cmd->add_option("--max-iter", max_iter, "fixed-point iteration cap");
    cmd->add_option("--starts", starts, "fixed-point start count");
    cmd->add_option("--seed", seed, "random seed");
  };

  CLI::App* eq = app.add_subcommand("eq", "Nash equilibrium efforts and uniqueness certificate");
  add_network(eq);
  eq->add_option("--method", method, "tree | fixed-point")
      ->check(CLI::IsMember({"tree", "fixed-point"}));
  add_fp_options(eq);

  CLI::App* opt = app.add_subcommand("opt", "social-output-maximizing effort profile");
  add_network(opt);
  opt->add_option("--grid", grid, "grid points per coordinate");

  CLI::App* poa_cmd = app.add_subcommand("poa", "price of anarchy of the file's reward scheme");
  add_network(poa_cmd);
  poa_cmd->add_option("--method", method, "tree | fixed-point")
      ->check(CLI::IsMember({"tree", "fixed-point"}));
  poa_cmd->add_option("--grid", grid, "grid points per coordinate");
  add_fp_options(poa_cmd);

  CLI::App* bound_cmd = app.add_subcommand("bound", "closed-form PoA bound for balanced trees");
  bound_cmd->add_option("--d", bound_d, "branching degree")->required();
  bound_cmd->add_option("--D", bound_D, "depth")->required();
  bound_cmd->add_option("--beta", bound_beta, "communication quality")->required();

  CLI::App* stable_cmd = app.add_subcommand("stable", "stability check of an effort profile");
  add_network(stable_cmd);
  stable_cmd->add_option("--efforts", efforts_path, "effort JSON file {\"x\": [...]}")->required();
  stable_cmd->add_flag("--lp", use_lp, "use the LP route instead of the analytic test");

  CLI::App* design_cmd = app.add_subcommand("design", "reward-scheme design");
  add_network(design_cmd);
  design_cmd->add_option("--grid", grid, "grid points per coordinate");
  design_cmd->add_option("--candidates", candidates, "heuristic candidate count");
  design_cmd->add_option("--seed", seed, "random seed");

  CLI::App* check_cmd = app.add_subcommand("check", "both uniqueness certificates");
  add_network(check_cmd);
  check_cmd->add_option("--seed", seed, "random seed");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "PoA / bound sweep over beta, CSV output");
  add_network(sweep_cmd);
  sweep_cmd->add_option("--beta-range", beta_range, "lo:hi:step")->required();
  sweep_cmd->add_flag("--fixed-h", fixed_h, "keep the file's H instead of designing per beta");
  sweep_cmd->add_option("--grid", grid, "grid points per coordinate");
  sweep_cmd->add_option("--candidates", candidates, "heuristic candidate count");
  sweep_cmd->add_option("--seed", seed, "random seed");
  sweep_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("effortnet");
    for (const std::string& a : argv_copy) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (eq->parsed()) {
      const NetworkBundle bundle = load_network(network_path);
      const bool tree = method.empty()
                            ? bundle.net.kind() == GraphKind::Hierarchy && bundle.model.is_ep()
                            : method == "tree";
      const EquilibriumResult res =
          tree ? solve_equilibrium_tree(bundle.net, bundle.model, bundle.payoff_fn, bundle.rewards)
               : solve_equilibrium_fixed_point(bundle.net, bundle.model, bundle.payoff_fn,
                                               bundle.rewards, {tol, max_iter, starts, seed});
      out << "node x y\n";
      for (int i = 1; i <= bundle.net.node_count(); ++i)
        out << i << " " << fmt(res.x_star[i]) << " " << fmt(res.outputs[i]) << "\n";
      out << "so " << fmt(res.social_output) << "\n";
      out << "residual " << fmt(res.residual) << "\n";
      out << "method " << (tree ? "tree" : "fixed-point") << "\n";
      out << "iterations " << res.iterations << "\n";
      for (const auto& [node, cands] : res.multiplicity) {
        out << "multiplicity node=" << node << " candidates=";
        for (size_t k = 0; k < cands.size(); ++k) out << (k ? "," : "") << fmt(cands[k]);
        out << "\n";
      }
      if (res.multiple_equilibria)
        out << "multiplicity distinct-fixed-points starts_converged=" << res.starts_converged
            << "/" << res.starts_total << "\n";
      if (bundle.net.kind() == GraphKind::Hierarchy)
        print_tree_certificate(out, uniqueness_certificate_tree(bundle.net, bundle.params, bundle.rewards));
      else
        print_sampled_certificate(out, uniqueness_certificate_general(bundle.net, bundle.model,
                                                                      bundle.payoff_fn, bundle.rewards,
                                                                      {1000, seed}));
      return 0;
    }

    if (opt->parsed()) {
      const NetworkBundle bundle = load_network(network_path);
      const OptimalEffort best = optimal_effort(bundle.net, bundle.model, {grid, 3, false});
      out << "node x\n";
      for (int i = 1; i <= bundle.net.node_count(); ++i) out << i << " " << fmt(best.x[i]) << "\n";
      out << "so " << fmt(best.so) << "\n";
      out << "method " << method_name(best.method) << "\n";
      return 0;
    }

    if (poa_cmd->parsed()) {
      const NetworkBundle bundle = load_network(network_path);
      const PoaReport report = poa(bundle.net, bundle.model, bundle.payoff_fn, bundle.rewards,
                                   {grid, 3, false}, {tol, max_iter, starts, seed});
      out << "so_eq " << fmt(report.so_equilibrium) << "\n";
      out << "so_opt " << fmt(report.so_optimal) << "\n";
      out << "poa " << fmt(report.poa) << "\n";
      out << "optimal_method " << method_name(report.optimal_method) << "\n";
      out << "multiplicity " << (report.multiplicity_note ? 1 : 0) << "\n";
      if (report.degenerate) out << "degenerate 1\n";
      return 0;
    }

    if (bound_cmd->parsed()) {
      const BalancedBoundReport report = poa_bound_balanced(bound_d, bound_D, bound_beta);
      out << "d " << report.d << "\n";
      out << "D " << report.D << "\n";
      out << "beta " << fmt(report.beta) << "\n";
      out << "xi " << fmt(report.xi) << "\n";
      for (size_t k = 0; k < report.phi_sequence.size(); ++k)
        out << "t" << (k + 1) << " " << fmt(report.phi_sequence[k]) << "\n";
      out << "bound " << fmt(report.bound) << "\n";
      out << "clamped " << (report.clamped ? 1 : 0) << "\n";
      return 0;
    }

    if (stable_cmd->parsed()) {
      const NetworkBundle bundle = load_network(network_path);
      const EffortProfile x = load_efforts(efforts_path, bundle.net.node_count());
      const StabilityResult res = use_lp ? stability_lp(bundle.net, bundle.params, x)
                                         : check_stability(bundle.net, bundle.params, x);
      out << "stable " << (res.stable ? 1 : 0) << "\n";
      if (res.stable)
        print_shares(out, res.H);
      else
        out << "INFEASIBLE\n";
      for (const auto& s : res.binding_report)
        out << "slack node=" << s.node << " output=" << fmt(s.output_slack)
            << " budget=" << fmt(s.budget_slack) << " feasible=" << (s.feasible ? 1 : 0) << "\n";
      return 0;
    }

    if (design_cmd->parsed()) {
      const NetworkBundle bundle = load_network(network_path);
      DesignOptions dopts;
      dopts.candidates = candidates;
      dopts.seed = seed;
      dopts.optimal = {grid, 3, false};
      const DesignResult res = design_reward_scheme(bundle.net, bundle.params, dopts);
      out << "guarantee " << guarantee_name(res.guarantee) << "\n";
      out << "achieved_so " << fmt(res.achieved_so) << "\n";
      out << "bound " << fmt(res.bound) << "\n";
      print_shares(out, res.H);
      return 0;
    }

    if (check_cmd->parsed()) {
      const NetworkBundle bundle = load_network(network_path);
      if (bundle.net.kind() == GraphKind::Hierarchy && bundle.model.is_ep())
        print_tree_certificate(out, uniqueness_certificate_tree(bundle.net, bundle.params, bundle.rewards));
      print_sampled_certificate(out, uniqueness_certificate_general(bundle.net, bundle.model,
                                                                    bundle.payoff_fn, bundle.rewards,
                                                                    {1000, seed}));
      return 0;
    }

    if (sweep_cmd->parsed()) {
      SweepRange range;
      if (!parse_range(beta_range, range)) {
        err << "--beta-range must be lo:hi:step with step > 0 and lo <= hi\n";
        return 1;
      }
      const NetworkBundle bundle = load_network(network_path);
      if (bundle.net.kind() != GraphKind::Hierarchy || !bundle.model.is_ep())
        fail(ErrorCode::ValidationError, "sweep supports EP hierarchies");
      const auto shape = bundle.net.balanced_shape();

      std::ostringstream csv;
      csv << "beta,so_eq,so_opt,poa,bound,unique\n";
      for (double beta = range.lo; beta <= range.hi + 1e-12; beta += range.step) {
        const EpParams params{beta, bundle.params.b, bundle.params.mu};
        const ProductivityModel model = ProductivityModel::ep(params);
        RewardScheme H = bundle.rewards;
        if (!fixed_h) {
          DesignOptions dopts;
          dopts.candidates = candidates;
          dopts.seed = seed;
          dopts.optimal = {grid, 3, false};
          H = design_reward_scheme(bundle.net, params, dopts).H;
        }
        const EquilibriumResult eq_res =
            solve_equilibrium_tree(bundle.net, model, bundle.payoff_fn, H);
        const OptimalEffort best = optimal_effort(bundle.net, model, {grid, 3, false});
        const double ratio = eq_res.social_output > 0.0
                                 ? best.so / eq_res.social_output
                                 : std::numeric_limits<double>::infinity();
        const double bound_val = shape
                                     ? poa_bound_balanced(shape->degree, shape->depth, beta).bound
                                     : std::numeric_limits<double>::quiet_NaN();
        const bool unique =
            uniqueness_certificate_tree(bundle.net, params, H).verdict == Verdict::Unique;
        csv << fmt(beta) << "," << fmt(eq_res.social_output) << "," << fmt(best.so) << ","
            << fmt(ratio) << "," << fmt(bound_val) << "," << (unique ? 1 : 0) << "\n";
      }
      if (out_path.empty()) {
        out << csv.str();
      } else {
        std::ofstream file(out_path);
        if (!file) fail(ErrorCode::ValidationError, "cannot open output file '" + out_path + "'");
        file << csv.str();
      }
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return error_exit_code(e.code());
  }
  err << "no subcommand\n";
  return 1;
}

}  // namespace effortnet
