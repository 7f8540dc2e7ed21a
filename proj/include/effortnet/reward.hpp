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

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "effortnet/topology.hpp"

namespace effortnet {

/// Sparse reward-sharing scheme H = [h_ij]: the fraction of influencee j's
/// direct output value paid to influencer i. Entries are nonnegative and only
/// allowed for j in E_i. No per-node budget cap is enforced at construction;
/// budgets are the business of certificates and the design module.
class RewardScheme {
 public:
  RewardScheme() = default;
  explicit RewardScheme(int node_count) : rows_(node_count + 1) {}

  static RewardScheme zero(int node_count) { return RewardScheme(node_count); }
  static RewardScheme from_entries(const NetworkTopology& net,
                                   const std::vector<std::tuple<int, int, double>>& entries);

  void set(const NetworkTopology& net, int i, int j, double h);

  double at(int i, int j) const;
  /// Stored shares of influencer i, sorted by influencee id.
  const std::vector<std::pair<int, double>>& shares_of(int i) const { return rows_[i]; }
  double row_sum(int i) const;

  int node_count() const { return static_cast<int>(rows_.size()) - 1; }
  std::vector<std::tuple<int, int, double>> entries() const;

 private:
  std::vector<std::vector<std::pair<int, double>>> rows_;
};

/// Converts retained-share fractions s_ij (with every node retaining the same
/// fraction gamma of its own output) into the unbounded reward scheme
/// h_ij = s_ij / gamma. Rejects columns whose raw shares exceed 1 - gamma.
RewardScheme from_retained_shares(const NetworkTopology& net,
                                  const std::map<std::pair<int, int>, double>& s,
                                  double gamma);

}  // namespace effortnet
