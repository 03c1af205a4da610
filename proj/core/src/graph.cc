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

#include "jamgame/graph.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "jamgame/error.h"

namespace jamgame {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Unite(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    // Smaller root wins so the representative is the smallest member.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

// Max-flow between s and t on the undirected unit-capacity graph; BFS
// augmenting paths, so at most deg(s) rounds.
int UnitMaxFlow(const Graph& g, int s, int t) {
  const int n = g.num_agents();
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) {
    cap[e.u - 1][e.v - 1] += 1;
    cap[e.v - 1][e.u - 1] += 1;
  }
  int flow = 0;
  std::vector<int> prev(n);
  while (true) {
    std::fill(prev.begin(), prev.end(), -1);
    prev[s] = s;
    std::queue<int> frontier;
    frontier.push(s);
    while (!frontier.empty() && prev[t] < 0) {
      int u = frontier.front();
      frontier.pop();
      for (int v = 0; v < n; ++v) {
        if (prev[v] < 0 && cap[u][v] > 0) {
          prev[v] = u;
          frontier.push(v);
        }
      }
    }
    if (prev[t] < 0) return flow;
    for (int v = t; v != s; v = prev[v]) {
      cap[prev[v]][v] -= 1;
      cap[v][prev[v]] += 1;
    }
    ++flow;
  }
}

void CheckActionMask(const Graph& g, EdgeMask m, const char* what) {
  if (!m.IsSubsetOf(g.AllEdges())) {
    throw InvalidAction(std::string(what) +
                        " set references edges outside the base graph");
  }
}

}  // namespace

Graph::Graph(int num_agents, std::vector<Edge> edges)
    : num_agents_(num_agents) {
  if (num_agents < 1 || num_agents > kMaxAgents) {
    throw InvalidInput("agent count must be in 1.." +
                       std::to_string(kMaxAgents) + ", got " +
                       std::to_string(num_agents));
  }
  for (Edge& e : edges) {
    if (e.u < 1 || e.u > num_agents || e.v < 1 || e.v > num_agents) {
      throw InvalidInput("edge (" + std::to_string(e.u) + "," +
                         std::to_string(e.v) + ") has an endpoint outside 1.." +
                         std::to_string(num_agents));
    }
    if (e.u == e.v) {
      throw InvalidInput("self-loop on agent " + std::to_string(e.u));
    }
    e = MakeEdge(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw InvalidInput("duplicate edge (" + std::to_string(dup->u) + "," +
                       std::to_string(dup->v) + ")");
  }
  if (static_cast<int>(edges.size()) > kMaxEdges) {
    throw InvalidInput("at most " + std::to_string(kMaxEdges) +
                       " edges are supported");
  }
  edges_ = std::move(edges);
}

std::optional<int> Graph::EdgeIndex(Edge e) const {
  e = MakeEdge(e.u, e.v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

EdgeMask Graph::MaskOf(std::span<const Edge> edges) const {
  EdgeMask m;
  for (const Edge& e : edges) {
    auto idx = EdgeIndex(e);
    if (!idx) {
      throw InvalidAction("edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") is not in the base graph");
    }
    m |= EdgeMask::Bit(*idx);
  }
  return m;
}

std::vector<Edge> Graph::EdgesOf(EdgeMask mask) const {
  std::vector<Edge> out;
  for (int i : mask.Indices()) {
    if (i < num_edges()) out.push_back(edges_[i]);
  }
  return out;
}

Graph Graph::Subgraph(EdgeMask keep) const {
  Graph g;
  g.num_agents_ = num_agents_;
  g.edges_ = EdgesOf(keep);
  return g;
}

EdgeMask Graph::IncidentEdges(NodeMask nodes) const {
  EdgeMask m;
  for (int i = 0; i < num_edges(); ++i) {
    if (nodes.Contains(edges_[i].u - 1) || nodes.Contains(edges_[i].v - 1)) {
      m |= EdgeMask::Bit(i);
    }
  }
  return m;
}

EdgeMask Graph::IncidentEdges(AgentId agent) const {
  return IncidentEdges(NodeMask::Bit(agent - 1));
}

Partition Components(const Graph& g, EdgeMask active) {
  const int n = g.num_agents();
  DisjointSets sets(n);
  for (int i : active.Indices()) {
    if (i >= g.num_edges()) break;
    sets.Unite(g.edges()[i].u - 1, g.edges()[i].v - 1);
  }
  Partition p;
  std::vector<int> slot(n, -1);
  for (int v = 0; v < n; ++v) {
    int root = sets.Find(v);
    if (slot[root] < 0) {
      slot[root] = p.size();
      p.groups.emplace_back();
    }
    p.groups[slot[root]].push_back(v + 1);
  }
  return p;
}

Partition Components(const Graph& g) { return Components(g, g.AllEdges()); }

int GroupCount(const Graph& g, EdgeMask active) {
  const int n = g.num_agents();
  DisjointSets sets(n);
  int groups = n;
  for (int i : active.Indices()) {
    if (i >= g.num_edges()) break;
    int a = sets.Find(g.edges()[i].u - 1);
    int b = sets.Find(g.edges()[i].v - 1);
    if (a != b) {
      sets.Unite(a, b);
      --groups;
    }
  }
  return groups;
}

int GroupCount(const Graph& g) { return GroupCount(g, g.AllEdges()); }

long long AgentGroupIndex(const Partition& p, int num_agents) {
  long long sum = 0;
  for (const auto& group : p.groups) {
    long long s = static_cast<long long>(group.size());
    sum += s * s;
  }
  return sum - static_cast<long long>(num_agents) * num_agents;
}

long long AgentGroupIndex(const Graph& g, EdgeMask active) {
  return AgentGroupIndex(Components(g, active), g.num_agents());
}

long long AgentGroupIndex(const Graph& g) {
  return AgentGroupIndex(g, g.AllEdges());
}

int EdgeConnectivity(const Graph& g) {
  if (g.num_agents() < 2) {
    throw InvalidInput("edge connectivity needs at least two agents");
  }
  int best = std::numeric_limits<int>::max();
  // Any minimum cut separates agent 1 from some other agent.
  for (int t = 1; t < g.num_agents(); ++t) {
    best = std::min(best, UnitMaxFlow(g, 0, t));
    if (best == 0) break;
  }
  return best;
}

Graph UnionGraph(std::span<const Graph> graphs) {
  if (graphs.empty()) throw InvalidInput("union of zero graphs");
  const int n = graphs.front().num_agents();
  std::vector<Edge> edges;
  for (const Graph& g : graphs) {
    if (g.num_agents() != n) {
      throw InvalidInput("union of graphs with different agent counts");
    }
    edges.insert(edges.end(), g.edges().begin(), g.edges().end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges));
}

ResolvedGraphs ApplyActions(const Graph& g0, EdgeMask strong, EdgeMask normal,
                            EdgeMask recover) {
  CheckActionMask(g0, strong, "strong");
  CheckActionMask(g0, normal, "normal");
  CheckActionMask(g0, recover, "recover");
  if (!(strong & normal).Empty()) {
    throw InvalidAction("strong and normal attack sets overlap");
  }
  EdgeMask attacked = g0.AllEdges().Without(strong | normal);
  return {g0.Subgraph(attacked),
          g0.Subgraph(ResolveEdges(g0.AllEdges(), strong, normal, recover))};
}

ResolvedGraphs ApplyActions(const Graph& g0, std::span<const Edge> strong,
                            std::span<const Edge> normal,
                            std::span<const Edge> recover) {
  return ApplyActions(g0, g0.MaskOf(strong), g0.MaskOf(normal),
                      g0.MaskOf(recover));
}

}  // namespace jamgame
