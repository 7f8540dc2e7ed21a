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

#include "effortnet/io.hpp"

#include <fstream>
#include <set>
#include <vector>

namespace effortnet {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!allowed.count(it.key()))
      fail(ErrorCode::ValidationError, "unknown key '" + it.key() + "' in " + where);
  }
}

const json& require_key(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(ErrorCode::ValidationError, "missing required key '" + key + "'");
  return *it;
}

double number_at(const json& value, const std::string& key) {
  if (!value.is_number())
    fail(ErrorCode::ValidationError, "key '" + key + "' must be a number, got " + value.dump());
  return value.get<double>();
}

int integer_at(const json& value, const std::string& key) {
  if (!value.is_number_integer())
    fail(ErrorCode::ValidationError, "key '" + key + "' must be an integer, got " + value.dump());
  return value.get<int>();
}

}  // namespace

NetworkBundle parse_network(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::ValidationError, "network document must be a JSON object");
  reject_unknown_keys(doc, {"nodes", "edges", "kind", "beta", "b", "mu", "productivity", "h"},
                      "network document");

  const int nodes = integer_at(require_key(doc, "nodes"), "nodes");

  GraphKind kind = GraphKind::Hierarchy;
  if (doc.contains("kind")) {
    const std::string k = doc["kind"].is_string() ? doc["kind"].get<std::string>() : doc["kind"].dump();
    if (k == "hierarchy")
      kind = GraphKind::Hierarchy;
    else if (k == "dag")
      kind = GraphKind::Dag;
    else
      fail(ErrorCode::ValidationError, "key 'kind' must be \"hierarchy\" or \"dag\", got " + k);
  }

  std::vector<std::pair<int, int>> edges;
  const json& edges_doc = require_key(doc, "edges");
  if (!edges_doc.is_array()) fail(ErrorCode::ValidationError, "key 'edges' must be an array of [i,j] pairs");
  for (const json& e : edges_doc) {
    if (!e.is_array() || e.size() != 2)
      fail(ErrorCode::ValidationError, "key 'edges': entry " + e.dump() + " is not an [i,j] pair");
    edges.push_back({integer_at(e[0], "edges"), integer_at(e[1], "edges")});
  }

  const double beta = number_at(require_key(doc, "beta"), "beta");
  const double b = number_at(require_key(doc, "b"), "b");

  Mu mu = Mu::one();
  if (doc.contains("mu")) {
    const json& mdoc = doc["mu"];
    if (!mdoc.is_object()) fail(ErrorCode::ValidationError, "key 'mu' must be an object");
    reject_unknown_keys(mdoc, {"kind", "alpha"}, "'mu'");
    const std::string mk = require_key(mdoc, "kind").is_string()
                               ? mdoc["kind"].get<std::string>()
                               : mdoc["kind"].dump();
    if (mk == "one") {
      if (mdoc.contains("alpha")) fail(ErrorCode::ValidationError, "'mu' of kind \"one\" takes no alpha");
      mu = Mu::one();
    } else if (mk == "power") {
      mu = Mu::power(number_at(require_key(mdoc, "alpha"), "mu.alpha"));
    } else {
      fail(ErrorCode::ValidationError, "key 'mu.kind' must be \"one\" or \"power\", got " + mk);
    }
  }

  bool ep = true;
  if (doc.contains("productivity")) {
    const std::string p = doc["productivity"].is_string() ? doc["productivity"].get<std::string>()
                                                          : doc["productivity"].dump();
    if (p == "ep")
      ep = true;
    else if (p == "linear")
      ep = false;
    else
      fail(ErrorCode::ValidationError, "key 'productivity' must be \"ep\" or \"linear\", got " + p);
  }

  const NetworkTopology net = NetworkTopology::validate(nodes, edges, kind);
  const EpParams params = EpParams::validated(beta, b, mu);

  std::vector<std::tuple<int, int, double>> shares;
  if (doc.contains("h")) {
    const json& hdoc = doc["h"];
    if (!hdoc.is_array()) fail(ErrorCode::ValidationError, "key 'h' must be an array of [i,j,value] triples");
    for (const json& t : hdoc) {
      if (!t.is_array() || t.size() != 3)
        fail(ErrorCode::ValidationError, "key 'h': entry " + t.dump() + " is not an [i,j,value] triple");
      shares.emplace_back(integer_at(t[0], "h"), integer_at(t[1], "h"), number_at(t[2], "h"));
    }
  }
  const RewardScheme rewards = RewardScheme::from_entries(net, shares);

  const ProductivityModel model = ep ? ProductivityModel::ep(params) : ProductivityModel::linear();
  return NetworkBundle{net, model, params, DirectPayoff(b), rewards};
}

NetworkBundle load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open network file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "in '" + path + "': " + e.what());
  }
  try {
    return parse_network(doc);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("in '") + path + "': " + e.what());
  }
}

json to_json(const NetworkBundle& bundle) {
  json doc;
  doc["nodes"] = bundle.net.node_count();
  json edges = json::array();
  for (const auto& [from, to] : bundle.net.edges()) edges.push_back({from, to});
  doc["edges"] = edges;
  doc["kind"] = bundle.net.kind() == GraphKind::Hierarchy ? "hierarchy" : "dag";
  doc["beta"] = bundle.params.beta;
  doc["b"] = bundle.params.b;
  if (bundle.params.mu.kind == Mu::Kind::One)
    doc["mu"] = {{"kind", "one"}};
  else
    doc["mu"] = {{"kind", "power"}, {"alpha", bundle.params.mu.alpha}};
  doc["productivity"] = bundle.model.is_ep() ? "ep" : "linear";
  json h = json::array();
  for (const auto& [i, j, value] : bundle.rewards.entries()) h.push_back({json(i), json(j), json(value)});
  doc["h"] = h;
  return doc;
}

EffortProfile parse_efforts(const json& doc, int expected_n) {
  if (!doc.is_object()) fail(ErrorCode::ValidationError, "effort document must be a JSON object");
  reject_unknown_keys(doc, {"x"}, "effort document");
  const json& x = require_key(doc, "x");
  if (!x.is_array()) fail(ErrorCode::ValidationError, "key 'x' must be an array of reals");
  if (static_cast<int>(x.size()) != expected_n)
    fail(ErrorCode::ValidationError, "key 'x' has " + std::to_string(x.size()) + " entries, network has " +
                                         std::to_string(expected_n) + " nodes");
  std::vector<double> values;
  for (const json& v : x) values.push_back(number_at(v, "x"));
  return EffortProfile::from_list(values);
}

EffortProfile load_efforts(const std::string& path, int expected_n) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open effort file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "in '" + path + "': " + e.what());
  }
  try {
    return parse_efforts(doc, expected_n);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("in '") + path + "': " + e.what());
  }
}

}  // namespace effortnet
