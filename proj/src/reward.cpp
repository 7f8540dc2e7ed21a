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

#include "effortnet/reward.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace effortnet {

void RewardScheme::set(const NetworkTopology& net, int i, int j, double h) {
  if (node_count() != net.node_count())
    fail(ErrorCode::ValidationError, "reward scheme size does not match the network");
  if (i < 1 || i > node_count() || j < 1 || j > node_count())
    fail(ErrorCode::ValidationError, "share (" + std::to_string(i) + "," + std::to_string(j) + ") references an unknown node");
  if (!net.is_influencee(i, j))
    fail(ErrorCode::NotDescendant,
         "share h(" + std::to_string(i) + "," + std::to_string(j) + ") rejected: node " + std::to_string(j) +
             " is not an influencee of node " + std::to_string(i));
  if (!(h >= 0.0))
    fail(ErrorCode::ValidationError, "share h(" + std::to_string(i) + "," + std::to_string(j) + ") must be >= 0");
  auto& row = rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, int key) { return e.first < key; });
  if (it != row.end() && it->first == j)
    it->second = h;
  else
    row.insert(it, {j, h});
}

RewardScheme RewardScheme::from_entries(const NetworkTopology& net,
                                        const std::vector<std::tuple<int, int, double>>& entries) {
  RewardScheme scheme(net.node_count());
  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j, h] : entries) {
    if (!seen.insert({i, j}).second)
      fail(ErrorCode::ValidationError,
           "duplicate share entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    scheme.set(net, i, j, h);
  }
  return scheme;
}

double RewardScheme::at(int i, int j) const {
  if (i < 1 || i > node_count()) return 0.0;
  const auto& row = rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, int key) { return e.first < key; });
  if (it != row.end() && it->first == j) return it->second;
  return 0.0;
}

double RewardScheme::row_sum(int i) const {
  double s = 0.0;
  for (const auto& [j, h] : rows_[i]) s += h;
  return s;
}

std::vector<std::tuple<int, int, double>> RewardScheme::entries() const {
  std::vector<std::tuple<int, int, double>> out;
  for (int i = 1; i <= node_count(); ++i)
    for (const auto& [j, h] : rows_[i])
      if (h != 0.0) out.emplace_back(i, j, h);
  return out;
}

RewardScheme from_retained_shares(const NetworkTopology& net,
                                  const std::map<std::pair<int, int>, double>& s,
                                  double gamma) {
  if (!(gamma > 0.0)) fail(ErrorCode::NonPositiveGamma, "gamma must be positive");
  if (gamma > 1.0) fail(ErrorCode::DomainError, "gamma must lie in (0,1]");

  std::map<int, double> column_sums;
  for (const auto& [key, value] : s) {
    if (!(value >= 0.0))
      fail(ErrorCode::ValidationError, "retained share s(" + std::to_string(key.first) + "," +
                                           std::to_string(key.second) + ") must be >= 0");
    column_sums[key.second] += value;
  }
  for (const auto& [j, total] : column_sums) {
    if (total > 1.0 - gamma + 1e-12)
      fail(ErrorCode::BudgetViolated, "column " + std::to_string(j) + " shares " + std::to_string(total) +
                                          " exceed 1 - gamma = " + std::to_string(1.0 - gamma));
  }

  RewardScheme scheme(net.node_count());
  for (const auto& [key, value] : s) scheme.set(net, key.first, key.second, value / gamma);
  return scheme;
}

}  // namespace effortnet
