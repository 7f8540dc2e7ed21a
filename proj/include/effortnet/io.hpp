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

#include <string>

#include <json.hpp>

#include "effortnet/reward.hpp"
#include "effortnet/topology.hpp"
#include "effortnet/types.hpp"

namespace effortnet {

/// Everything a network file describes: topology, productivity rule,
/// parameters, direct payoff, and the reward-sharing scheme.
struct NetworkBundle {
  NetworkTopology net;
  ProductivityModel model;
  EpParams params;
  DirectPayoff payoff_fn;
  RewardScheme rewards;
};

/// Parses the JSON network document. Required keys: "nodes", "edges",
/// "beta", "b". Optional: "kind" (default "hierarchy"), "mu" (default
/// {"kind":"one"}), "productivity" (default "ep"), "h" (default empty).
/// Unknown keys are rejected.
NetworkBundle parse_network(const nlohmann::json& doc);

/// Reads and parses a network file; errors carry the offending key/value.
NetworkBundle load_network(const std::string& path);

/// Serializes the bundle back to the document form accepted by
/// parse_network; load + save round-trips to a semantically equal bundle.
nlohmann::json to_json(const NetworkBundle& bundle);

/// Reads {"x": [n reals in [0,1]]}; the length must match expected_n.
EffortProfile load_efforts(const std::string& path, int expected_n);

EffortProfile parse_efforts(const nlohmann::json& doc, int expected_n);

}  // namespace effortnet
