// Copyright 2026 The jamgame Authors.
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

#include "jamgame/scenario.h"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "jamgame/error.h"
#include "json.hpp"

namespace jamgame {
namespace {

using Json = nlohmann::json;

// Reads one JSON object, tracking its path for error messages and rejecting
// keys that were never asked for.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) Fail(path_, "expected an object");
  }

  bool Has(const std::string& key) const { return j_.contains(key); }

  const Json& Get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) Fail(Path(key), "missing required field");
    return *it;
  }

  double Number(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_number()) Fail(Path(key), "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) Fail(Path(key), "expected a finite number");
    return d;
  }
  double Number(const std::string& key, double fallback) {
    return Has(key) ? Number(key) : fallback;
  }

  int Integer(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_number_integer()) Fail(Path(key), "expected an integer");
    long long i = v.get<long long>();
    if (i < -1'000'000'000 || i > 1'000'000'000) {
      Fail(Path(key), "integer out of range");
    }
    return static_cast<int>(i);
  }
  int Integer(const std::string& key, int fallback) {
    return Has(key) ? Integer(key) : fallback;
  }

  bool Bool(const std::string& key, bool fallback) {
    if (!Has(key)) return fallback;
    const Json& v = Get(key);
    if (!v.is_boolean()) Fail(Path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string String(const std::string& key) {
    const Json& v = Get(key);
    if (!v.is_string()) Fail(Path(key), "expected a string");
    return v.get<std::string>();
  }

  Reader Object(const std::string& key) { return Reader(Get(key), Path(key)); }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  // Call after all reads; rejects unrecognised keys.
  void Done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) Fail(Path(it.key()), "unknown field");
    }
  }

  [[noreturn]] static void Fail(const std::string& path,
                                const std::string& what) {
    throw InvalidInput(path + ": " + what);
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double FiniteAt(const Json& v, const std::string& path) {
  if (!v.is_number()) Reader::Fail(path, "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) Reader::Fail(path, "expected a finite number");
  return d;
}

Graph ReadGraph(Reader r) {
  int n = r.Integer("n");
  if (n < 2) Reader::Fail(r.Path("n"), "need at least 2 agents");
  const Json& list = r.Get("edges");
  if (!list.is_array()) Reader::Fail(r.Path("edges"), "expected a list");
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string path = r.Path("edges") + "[" + std::to_string(i) + "]";
    const Json& e = list[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      Reader::Fail(path, "expected a pair of agent labels");
    }
    long long a = e[0].get<long long>();
    long long b = e[1].get<long long>();
    if (a < 1 || a > n || b < 1 || b > n) {
      Reader::Fail(path, "agent label outside 1.." + std::to_string(n));
    }
    if (a == b) Reader::Fail(path, "self-loop");
    Edge edge = MakeEdge(static_cast<AgentId>(a), static_cast<AgentId>(b));
    if (!seen.insert(edge).second) Reader::Fail(path, "duplicate edge");
    edges.push_back(edge);
  }
  r.Done();
  try {
    return Graph(n, std::move(edges));
  } catch (const InvalidInput& e) {
    Reader::Fail(r.Path("edges"), e.what());
  }
}

WeightMatrix ReadWeights(Reader r, const Graph& g) {
  bool uniform = r.Has("uniform");
  bool matrix = r.Has("matrix");
  if (uniform == matrix) {
    Reader::Fail("consensus_weights", "give exactly one of uniform or matrix");
  }
  try {
    if (uniform) {
      double w = r.Number("uniform");
      r.Done();
      return WeightMatrix::Uniform(g, w);
    }
    const Json& rows = r.Get("matrix");
    std::string path = r.Path("matrix");
    if (!rows.is_array()) Reader::Fail(path, "expected a list of rows");
    std::vector<std::vector<double>> a;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::string row_path = path + "[" + std::to_string(i) + "]";
      if (!rows[i].is_array()) Reader::Fail(row_path, "expected a list");
      std::vector<double>& row = a.emplace_back();
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        row.push_back(
            FiniteAt(rows[i][j], row_path + "[" + std::to_string(j) + "]"));
      }
    }
    r.Done();
    return WeightMatrix::FromMatrix(g, a);
  } catch (const InvalidInput& e) {
    std::string what = e.what();
    if (what.starts_with("consensus_weights")) throw;
    Reader::Fail(uniform ? r.Path("uniform") : r.Path("matrix"), what);
  }
}

EnergyParams ReadAttackerEnergy(Reader r) {
  EnergyParams p;
  p.kappa = r.Number("kappa");
  p.rho = r.Number("rho");
  p.beta_normal = r.Number("beta_normal");
  p.beta_strong = r.Number("beta_strong");
  p.beta_node_normal = r.Number("beta_node_normal", 0.0);
  p.beta_node_strong = r.Number("beta_node_strong", 0.0);
  r.Done();
  return p;
}

EnergyParams ReadDefenderEnergy(Reader r) {
  EnergyParams p;
  p.kappa = r.Number("kappa");
  p.rho = r.Number("rho");
  p.beta_recover = r.Number("beta_recover");
  r.Done();
  return p;
}

CostModel ReadCostModel(Reader r) {
  CostModel cm;
  if (r.Has("mode")) {
    std::string mode = r.String("mode");
    if (mode == "edge") {
      cm.mode = AttackMode::kEdge;
    } else if (mode == "node") {
      cm.mode = AttackMode::kNode;
    } else {
      Reader::Fail(r.Path("mode"), "expected \"edge\" or \"node\"");
    }
  }
  if (r.Has("waste")) {
    std::string waste = r.String("waste");
    if (waste == "charged") {
      cm.waste = WastePolicy::kCharged;
    } else if (waste == "free") {
      cm.waste = WastePolicy::kFree;
    } else {
      Reader::Fail(r.Path("waste"), "expected \"charged\" or \"free\"");
    }
  }
  r.Done();
  return cm;
}

template <typename Fn>
void WithPrefix(const std::string& prefix, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidInput& e) {
    throw InvalidInput(prefix + ": " + e.what());
  }
}

Json WeightsJson(const WeightMatrix& w, const Graph& g) {
  bool uniform = true;
  for (int e = 1; e < g.num_edges(); ++e) {
    if (w.edge_weight(e) != w.edge_weight(0)) uniform = false;
  }
  if (uniform && g.num_edges() > 0) return {{"uniform", w.edge_weight(0)}};
  return {{"matrix", w.ToMatrix()}};
}

}  // namespace

void ValidateScenario(const Scenario& s) {
  const Graph& g = s.spec.graph;
  if (g.num_agents() < 2) throw InvalidInput("graph.n: need at least 2 agents");
  if (GroupCount(g) != 1) throw InvalidInput("graph: base graph is disconnected");
  if (static_cast<int>(s.initial_state.size()) != g.num_agents()) {
    throw InvalidInput("initial_state: length must equal graph.n");
  }
  for (std::size_t i = 0; i < s.initial_state.size(); ++i) {
    if (!std::isfinite(s.initial_state[i])) {
      throw InvalidInput("initial_state[" + std::to_string(i) +
                         "]: expected a finite number");
    }
  }
  if (s.spec.weights.size() != g.num_agents()) {
    throw InvalidInput("consensus_weights: size does not match graph.n");
  }
  WithPrefix("attacker_energy", [&] {
    ValidateAttackerParams(s.spec.attacker_energy, s.spec.cost_model);
  });
  WithPrefix("defender_energy",
             [&] { ValidateDefenderParams(s.spec.defender_energy); });
  WithPrefix("horizons/periods/utility", [&] { ValidateGameSpec(s.spec); });
  WithPrefix("run", [&] { ValidateRunOptions(s.run); });
  if (!(s.cluster_tol > 0.0) || !std::isfinite(s.cluster_tol)) {
    throw InvalidInput("run.cluster_tol: must be positive");
  }
  if (s.union_window < 1) {
    throw InvalidInput("run.union_window: must be >= 1");
  }
  const WorkBound& wb = s.work_bound;
  if (wb.max_edges < 1 || wb.max_horizon < 1 || !(wb.max_leaves >= 1.0)) {
    throw InvalidInput("work_bound: limits must be positive");
  }
}

Scenario ParseScenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("(document): ") + e.what());
  }
  Reader root(j, "");
  int version = root.Integer("scenario_version");
  if (version != kScenarioVersion) {
    Reader::Fail("scenario_version",
                 "unsupported version " + std::to_string(version));
  }
  Scenario s;
  s.name = root.Has("name") ? root.String("name") : "";
  s.spec.graph = ReadGraph(root.Object("graph"));
  const Graph& g = s.spec.graph;

  const Json& x0 = root.Get("initial_state");
  if (!x0.is_array()) Reader::Fail("initial_state", "expected a list");
  for (std::size_t i = 0; i < x0.size(); ++i) {
    s.initial_state.push_back(
        FiniteAt(x0[i], "initial_state[" + std::to_string(i) + "]"));
  }

  s.spec.weights = root.Has("consensus_weights")
                       ? ReadWeights(root.Object("consensus_weights"), g)
                       : WeightMatrix::Default(g);
  s.spec.attacker_energy = ReadAttackerEnergy(root.Object("attacker_energy"));
  s.spec.defender_energy = ReadDefenderEnergy(root.Object("defender_energy"));
  if (root.Has("cost_model")) {
    s.spec.cost_model = ReadCostModel(root.Object("cost_model"));
  }
  if (root.Has("utility")) {
    Reader u = root.Object("utility");
    s.spec.utility.a = u.Number("a", 1.0);
    s.spec.utility.b = u.Number("b", 0.0);
    u.Done();
  }
  {
    Reader h = root.Object("horizons");
    s.spec.horizons.attacker = h.Integer("attacker");
    s.spec.horizons.defender = h.Integer("defender");
    h.Done();
  }
  {
    Reader t = root.Object("periods");
    s.spec.periods.attacker = t.Integer("attacker");
    s.spec.periods.defender = t.Integer("defender");
    t.Done();
  }
  if (root.Has("run")) {
    Reader r = root.Object("run");
    s.run.max_steps = r.Integer("max_steps", s.run.max_steps);
    s.run.stop_on_convergence =
        r.Bool("stop_on_convergence", s.run.stop_on_convergence);
    s.run.convergence_tol = r.Number("convergence_tol", s.run.convergence_tol);
    s.run.convergence_window =
        r.Integer("convergence_window", s.run.convergence_window);
    s.cluster_tol = r.Number("cluster_tol", s.cluster_tol);
    s.union_window = r.Integer("union_window", s.union_window);
    r.Done();
  }
  if (root.Has("work_bound")) {
    Reader w = root.Object("work_bound");
    s.work_bound.max_edges = w.Integer("max_edges", s.work_bound.max_edges);
    s.work_bound.max_horizon =
        w.Integer("max_horizon", s.work_bound.max_horizon);
    s.work_bound.max_leaves = w.Number("max_leaves", s.work_bound.max_leaves);
    w.Done();
  }
  root.Done();

  if (s.union_window == 0) {
    s.union_window =
        4 * std::lcm(std::max(1, s.spec.periods.attacker),
                     std::max(1, s.spec.periods.defender));
  }
  ValidateScenario(s);
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

std::string SerializeScenario(const Scenario& s) {
  const GameSpec& spec = s.spec;
  Json edges = Json::array();
  for (const Edge& e : spec.graph.edges()) edges.push_back({e.u, e.v});
  const EnergyParams& pa = spec.attacker_energy;
  const EnergyParams& pd = spec.defender_energy;
  Json j = {
      {"scenario_version", kScenarioVersion},
      {"name", s.name},
      {"graph", {{"n", spec.graph.num_agents()}, {"edges", edges}}},
      {"initial_state", s.initial_state},
      {"consensus_weights", WeightsJson(spec.weights, spec.graph)},
      {"attacker_energy",
       {{"kappa", pa.kappa},
        {"rho", pa.rho},
        {"beta_normal", pa.beta_normal},
        {"beta_strong", pa.beta_strong},
        {"beta_node_normal", pa.beta_node_normal},
        {"beta_node_strong", pa.beta_node_strong}}},
      {"defender_energy",
       {{"kappa", pd.kappa}, {"rho", pd.rho}, {"beta_recover", pd.beta_recover}}},
      {"cost_model",
       {{"mode", spec.cost_model.mode == AttackMode::kEdge ? "edge" : "node"},
        {"waste",
         spec.cost_model.waste == WastePolicy::kCharged ? "charged" : "free"}}},
      {"utility", {{"a", spec.utility.a}, {"b", spec.utility.b}}},
      {"horizons",
       {{"attacker", spec.horizons.attacker},
        {"defender", spec.horizons.defender}}},
      {"periods",
       {{"attacker", spec.periods.attacker},
        {"defender", spec.periods.defender}}},
      {"run",
       {{"max_steps", s.run.max_steps},
        {"stop_on_convergence", s.run.stop_on_convergence},
        {"convergence_tol", s.run.convergence_tol},
        {"convergence_window", s.run.convergence_window},
        {"cluster_tol", s.cluster_tol},
        {"union_window", s.union_window}}},
      {"work_bound",
       {{"max_edges", s.work_bound.max_edges},
        {"max_horizon", s.work_bound.max_horizon},
        {"max_leaves", s.work_bound.max_leaves}}},
  };
  return j.dump(2) + "\n";
}

void SaveScenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file " + path.string());
  out << SerializeScenario(s);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace jamgame
