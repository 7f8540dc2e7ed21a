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

#include <optional>
#include <utility>
#include <vector>

#include "effortnet/error.hpp"

namespace effortnet {

enum class GraphKind { Hierarchy, Dag };

/// Shape of a complete d-ary tree: every internal node has `degree` children
/// and all leaves sit at depth `depth` + 1 (the root is at depth 1).
struct BalancedShape {
  int degree = 0;
  int depth = 0;
};

/// Directed influence structure over nodes 1..n. Node ids are topologically
/// numbered: every edge (i, j) has i < j, so the adjacency matrix is strictly
/// upper triangular. For Hierarchy kind node 1 is the root and every other
/// node has exactly one parent; the origin communicates perfectly with the
/// root, so the root's influencer set is empty.
///
/// Influencers R_i are all ancestors of i, influencees E_i all descendants.
/// Both are precomputed at validation time and immutable afterwards.
class NetworkTopology {
 public:
  static NetworkTopology validate(int node_count,
                                  const std::vector<std::pair<int, int>>& edges,
                                  GraphKind kind);

  int node_count() const { return n_; }
  GraphKind kind() const { return kind_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Parent of i in a hierarchy; 0 for the root. Hierarchy kind only.
  int parent(int i) const;
  const std::vector<int>& children(int i) const { return children_[check(i)]; }
  int child_count(int i) const { return static_cast<int>(children_[check(i)].size()); }

  /// R_i: ancestors of i, ascending.
  const std::vector<int>& influencers(int i) const { return influencers_[check(i)]; }
  /// E_i: descendants of i, ascending.
  const std::vector<int>& influencees(int i) const { return influencees_[check(i)]; }

  bool is_leaf(int i) const { return influencees_[check(i)].empty(); }
  bool is_influencee(int i, int j) const;

  /// 1-based level of i in a hierarchy (root = 1).
  int depth(int i) const;

  /// Shape parameters when the hierarchy is a complete d-ary tree with
  /// uniform leaf depth >= 2; nullopt for DAGs, single nodes, and irregular
  /// trees.
  std::optional<BalancedShape> balanced_shape() const;

 private:
  NetworkTopology() = default;
  int check(int i) const;

  int n_ = 0;
  GraphKind kind_ = GraphKind::Hierarchy;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> influencers_;
  std::vector<std::vector<int>> influencees_;
};

}  // namespace effortnet
