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

#include "effortnet/topology.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace effortnet {

namespace {

std::vector<int> merged_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

int NetworkTopology::check(int i) const {
  if (i < 1 || i > n_) fail(ErrorCode::ValidationError, "node id " + std::to_string(i) + " out of range 1.." + std::to_string(n_));
  return i;
}

int NetworkTopology::parent(int i) const {
  if (kind_ != GraphKind::Hierarchy) fail(ErrorCode::ValidationError, "parent() is defined for hierarchies only");
  return parent_[check(i)];
}

int NetworkTopology::depth(int i) const {
  if (kind_ != GraphKind::Hierarchy) fail(ErrorCode::ValidationError, "depth() is defined for hierarchies only");
  return depth_[check(i)];
}

bool NetworkTopology::is_influencee(int i, int j) const {
  const auto& e = influencees_[check(i)];
  return std::binary_search(e.begin(), e.end(), check(j));
}

NetworkTopology NetworkTopology::validate(int node_count,
                                          const std::vector<std::pair<int, int>>& edges,
                                          GraphKind kind) {
  if (node_count < 1) fail(ErrorCode::ValidationError, "node_count must be >= 1");

  NetworkTopology net;
  net.n_ = node_count;
  net.kind_ = kind;
  net.children_.assign(node_count + 1, {});
  net.parent_.assign(node_count + 1, 0);
  net.depth_.assign(node_count + 1, 0);

  std::vector<int> in_degree(node_count + 1, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& [from, to] : edges) {
    if (from < 1 || from > node_count || to < 1 || to > node_count)
      fail(ErrorCode::ValidationError,
           "edge (" + std::to_string(from) + "," + std::to_string(to) + ") references a node outside 1.." + std::to_string(node_count));
    if (from == to)
      fail(ErrorCode::Cycle, "self-loop at node " + std::to_string(from));
    if (from > to)
      fail(ErrorCode::NonTopologicalNumbering,
           "edge (" + std::to_string(from) + "," + std::to_string(to) + ") has influencer id >= influencee id");
    if (!seen.insert({from, to}).second)
      fail(ErrorCode::ValidationError,
           "duplicate edge (" + std::to_string(from) + "," + std::to_string(to) + ")");
    net.children_[from].push_back(to);
    ++in_degree[to];
  }
  net.edges_.assign(seen.begin(), seen.end());
  for (auto& c : net.children_) std::sort(c.begin(), c.end());

  if (kind == GraphKind::Hierarchy) {
    for (int j = 2; j <= node_count; ++j) {
      if (in_degree[j] > 1)
        fail(ErrorCode::MultipleParents, "node " + std::to_string(j) + " has " + std::to_string(in_degree[j]) + " parents");
      if (in_degree[j] == 0)
        fail(ErrorCode::DisconnectedHierarchy, "node " + std::to_string(j) + " is unreachable from the root");
    }
    for (const auto& [from, to] : net.edges_) net.parent_[to] = from;
    net.depth_[1] = 1;
    for (int j = 2; j <= node_count; ++j) net.depth_[j] = net.depth_[net.parent_[j]] + 1;
  }

  // Topological numbering makes both closures single-pass dynamic programs.
  net.influencers_.assign(node_count + 1, {});
  for (int j = 2; j <= node_count; ++j) {
    std::vector<int> acc;
    for (const auto& [from, to] : net.edges_) {
      if (to != j) continue;
      std::vector<int> with_parent = merged_union(net.influencers_[from], std::vector<int>{from});
      acc = merged_union(acc, with_parent);
    }
    net.influencers_[j] = std::move(acc);
  }
  net.influencees_.assign(node_count + 1, {});
  for (int i = node_count; i >= 1; --i) {
    std::vector<int> acc;
    for (int c : net.children_[i]) {
      acc = merged_union(acc, merged_union(net.influencees_[c], std::vector<int>{c}));
    }
    net.influencees_[i] = std::move(acc);
  }
  return net;
}

std::optional<BalancedShape> NetworkTopology::balanced_shape() const {
  if (kind_ != GraphKind::Hierarchy || n_ < 2) return std::nullopt;
  int leaf_depth = 0;
  int degree = 0;
  for (int i = 1; i <= n_; ++i) {
    if (is_leaf(i)) {
      if (leaf_depth == 0) leaf_depth = depth_[i];
      if (depth_[i] != leaf_depth) return std::nullopt;
    } else {
      if (degree == 0) degree = child_count(i);
      if (child_count(i) != degree) return std::nullopt;
    }
  }
  if (leaf_depth < 2) return std::nullopt;
  return BalancedShape{degree, leaf_depth - 1};
}

}  // namespace effortnet
