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

#include "effortnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace effortnet {

namespace {

// Nodes whose factor separates p_j from p_i, i.e. R_j \ R_i. Because j is an
// influencee of i this set contains i itself. On a tree it is the path from
// i to j, inclusive of i, exclusive of j.
std::vector<int> separating_nodes(const NetworkTopology& net, int i, int j) {
  const auto& rj = net.influencers(j);
  const auto& ri = net.influencers(i);
  std::vector<int> out;
  std::set_difference(rj.begin(), rj.end(), ri.begin(), ri.end(), std::back_inserter(out));
  return out;
}

}  // namespace

double node_factor(const NetworkTopology& net, const ProductivityModel& model, double x_k, int k) {
  if (model.kind() == ProductivityModel::Kind::LinearProduct) return 1.0 - x_k;
  const EpParams& p = model.ep_params();
  return p.mu(net.child_count(k)) * std::exp(-p.beta * x_k);
}

double productivity(const NetworkTopology& net, const ProductivityModel& model,
                    const EffortProfile& x, int i) {
  double p = 1.0;
  for (int k : net.influencers(i)) p *= node_factor(net, model, x[k], k);
  return p;
}

std::vector<double> all_productivities(const NetworkTopology& net, const ProductivityModel& model,
                                       const EffortProfile& x) {
  const int n = net.node_count();
  std::vector<double> p(n + 1, 1.0);
  p[0] = 0.0;
  if (net.kind() == GraphKind::Hierarchy) {
    for (int i = 2; i <= n; ++i) {
      const int par = net.parent(i);
      p[i] = p[par] * node_factor(net, model, x[par], par);
    }
  } else {
    for (int i = 1; i <= n; ++i) p[i] = productivity(net, model, x, i);
  }
  return p;
}

double fractional_productivity(const NetworkTopology& net, const ProductivityModel& model,
                               const EffortProfile& x, int i, int j) {
  if (!net.is_influencee(i, j))
    fail(ErrorCode::NotDescendant,
         "node " + std::to_string(j) + " is not an influencee of node " + std::to_string(i));
  double p = 1.0;
  for (int k : separating_nodes(net, i, j)) p *= node_factor(net, model, x[k], k);
  return p;
}

double productivity_partial(const NetworkTopology& net, const ProductivityModel& model,
                            const EffortProfile& x, int j, int i) {
  const auto& rj = net.influencers(j);
  if (!std::binary_search(rj.begin(), rj.end(), i)) return 0.0;
  if (model.kind() == ProductivityModel::Kind::EpProduct) {
    return -model.ep_params().beta * productivity(net, model, x, j);
  }
  // Linear: derivative drops i's own factor from the product.
  double p = -1.0;
  for (int k : rj)
    if (k != i) p *= 1.0 - x[k];
  return p;
}

double influence_rate(const NetworkTopology& net, const ProductivityModel& model,
                      const EffortProfile& x, int i, int j) {
  if (model.kind() == ProductivityModel::Kind::EpProduct)
    return model.ep_params().beta * fractional_productivity(net, model, x, i, j);
  // Linear: the rate is independent of x_i; multiply over the separators
  // other than i itself.
  double rate = 1.0;
  for (int k : separating_nodes(net, i, j))
    if (k != i) rate *= 1.0 - x[k];
  return rate;
}

double payoff(const NetworkTopology& net, const ProductivityModel& model,
              const DirectPayoff& payoff_fn, const RewardScheme& H, const EffortProfile& x, int i) {
  const std::vector<double> p = all_productivities(net, model, x);
  double u = p[i] * payoff_fn.f(x[i]);
  for (const auto& [j, h] : H.shares_of(i)) u += h * p[j] * x[j];
  return u;
}

double payoff_gradient(const NetworkTopology& net, const ProductivityModel& model,
                       const DirectPayoff& payoff_fn, const RewardScheme& H,
                       const EffortProfile& x, int i) {
  double g = productivity(net, model, x, i) * payoff_fn.fprime(x[i]);
  for (const auto& [j, h] : H.shares_of(i))
    g += h * x[j] * productivity_partial(net, model, x, j, i);
  return g;
}

std::vector<double> node_outputs(const NetworkTopology& net, const ProductivityModel& model,
                                 const EffortProfile& x) {
  std::vector<double> y = all_productivities(net, model, x);
  for (int i = 1; i <= net.node_count(); ++i) y[i] *= x[i];
  return y;
}

double social_output(const NetworkTopology& net, const ProductivityModel& model,
                     const EffortProfile& x) {
  const std::vector<double> y = node_outputs(net, model, x);
  double so = 0.0;
  for (int i = 1; i <= net.node_count(); ++i) so += y[i];
  return so;
}

double efor(const NetworkTopology& net, const ProductivityModel& model, const RewardScheme& H,
            const EffortProfile& x, int i) {
  double total = 0.0;
  for (const auto& [j, h] : H.shares_of(i)) {
    if (h == 0.0) continue;
    total += h * x[j] * influence_rate(net, model, x, i, j);
  }
  return total;
}

}  // namespace effortnet
