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

#ifndef JAMGAME_TESTS_FIXTURES_H_
#define JAMGAME_TESTS_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jamgame/game.h"
#include "jamgame/graph.h"

namespace jamgame::testing {

inline Graph Path3() { return Graph(3, {{1, 2}, {2, 3}}); }

// Unattacked graph of the Theta worked example: agent 3 adjacent to 2 and 4.
inline Graph ThetaGraph() { return Graph(4, {{1, 2}, {2, 3}, {3, 4}, {2, 4}}); }

inline Graph Cycle4() { return Graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }

inline Graph Complete(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) edges.push_back({i, j});
  }
  return Graph(n, edges);
}

// Energy and utility parameters of the numerical example on the 3-path.
inline GameSpec ExampleSpec(int h_a, int h_d, int t_a, int t_d) {
  GameSpec s;
  s.graph = Path3();
  s.weights = WeightMatrix::Default(s.graph);
  s.attacker_energy.kappa = 1.5;
  s.attacker_energy.rho = 1.5;
  s.attacker_energy.beta_normal = 1.0;
  s.attacker_energy.beta_strong = 2.0;
  s.defender_energy.kappa = 0.5;
  s.defender_energy.rho = 0.5;
  s.defender_energy.beta_recover = 1.0;
  s.utility = {1.0, 0.0};
  s.horizons = {h_a, h_d};
  s.periods = {t_a, t_d};
  return s;
}

inline std::string ScenarioPath(const std::string& name) {
  return std::string(JAMGAME_SCENARIO_DIR) + "/" + name + ".json";
}

// Random connected graph: a random spanning tree plus extra edges.
inline Graph RandomConnectedGraph(std::mt19937& rng, int n, int max_edges) {
  std::vector<Edge> edges;
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> parent(1, v - 1);
    edges.push_back(MakeEdge(parent(rng), v));
  }
  std::vector<Edge> extra;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      bool used = false;
      for (const Edge& e : edges) used |= e == Edge{i, j};
      if (!used) extra.push_back({i, j});
    }
  }
  std::shuffle(extra.begin(), extra.end(), rng);
  std::uniform_int_distribution<int> count(
      0, std::max(0, std::min<int>(extra.size(), max_edges - (n - 1))));
  extra.resize(count(rng));
  edges.insert(edges.end(), extra.begin(), extra.end());
  return Graph(n, edges);
}

// Random graph, possibly disconnected.
inline Graph RandomGraph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (keep(rng)) edges.push_back({i, j});
    }
  }
  return Graph(n, edges);
}

inline EdgeMask RandomMask(std::mt19937& rng, int bits) {
  std::uniform_int_distribution<std::uint32_t> d(0, (1u << bits) - 1);
  return EdgeMask{d(rng)};
}

inline std::vector<double> RandomState(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

}  // namespace jamgame::testing

#endif  // JAMGAME_TESTS_FIXTURES_H_
