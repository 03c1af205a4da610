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

#ifndef JAMGAME_GRAPH_H_
#define JAMGAME_GRAPH_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace jamgame {

// Agents are labelled 1..n everywhere in the public API.
using AgentId = int;

// Bit set over the edges (or agents) of one base graph. Bit i refers to the
// i-th edge of Graph::edges() (resp. agent i+1).
template <typename Tag>
struct Mask {
  std::uint32_t bits = 0;

  static constexpr Mask Bit(int i) { return Mask{std::uint32_t{1} << i}; }
  static constexpr Mask FirstN(int count) {
    return Mask{count >= 32 ? ~std::uint32_t{0}
                            : (std::uint32_t{1} << count) - 1};
  }

  constexpr bool Empty() const { return bits == 0; }
  constexpr int Count() const { return std::popcount(bits); }
  constexpr bool Contains(int i) const { return (bits >> i) & 1u; }
  constexpr bool IsSubsetOf(Mask other) const {
    return (bits & ~other.bits) == 0;
  }

  constexpr Mask operator|(Mask o) const { return Mask{bits | o.bits}; }
  constexpr Mask operator&(Mask o) const { return Mask{bits & o.bits}; }
  constexpr Mask Without(Mask o) const { return Mask{bits & ~o.bits}; }
  constexpr Mask& operator|=(Mask o) {
    bits |= o.bits;
    return *this;
  }
  friend constexpr bool operator==(Mask, Mask) = default;

  // Member indices in increasing order.
  std::vector<int> Indices() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }
};

using EdgeMask = Mask<struct EdgeTag>;
using NodeMask = Mask<struct NodeTag>;

// Masks are 32 bits wide; keep one bit of headroom for FirstN arithmetic.
inline constexpr int kMaxEdges = 30;
inline constexpr int kMaxAgents = 30;

// Lexicographic order on the sorted member lists, e.g. {} < {0} < {0,1} < {1}.
template <typename Tag>
bool LexLess(Mask<Tag> a, Mask<Tag> b) {
  std::uint32_t x = a.bits;
  std::uint32_t y = b.bits;
  while (x != 0 && y != 0) {
    int i = std::countr_zero(x);
    int j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

// Undirected edge stored with the smaller label first.
struct Edge {
  AgentId u = 0;
  AgentId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge MakeEdge(AgentId a, AgentId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Immutable undirected simple graph on agents 1..n. The edge list is kept in
// canonical (lexicographic) order so that masks, enumeration and tie-breaks
// are reproducible.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidInput on self-loops, duplicates (in either orientation),
  // labels outside 1..n, or sizes beyond kMaxAgents / kMaxEdges.
  Graph(int num_agents, std::vector<Edge> edges);

  int num_agents() const { return num_agents_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  EdgeMask AllEdges() const { return EdgeMask::FirstN(num_edges()); }
  NodeMask AllNodes() const { return NodeMask::FirstN(num_agents_); }

  std::optional<int> EdgeIndex(Edge e) const;
  // Throws InvalidAction if some edge is not in this graph.
  EdgeMask MaskOf(std::span<const Edge> edges) const;
  std::vector<Edge> EdgesOf(EdgeMask mask) const;
  // Graph on the same agents keeping only the edges in `keep`.
  Graph Subgraph(EdgeMask keep) const;
  // All edges with at least one endpoint in `nodes`.
  EdgeMask IncidentEdges(NodeMask nodes) const;
  // Edges adjacent to agent i (1-based).
  EdgeMask IncidentEdges(AgentId agent) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int num_agents_ = 0;
  std::vector<Edge> edges_;
};

// Connected components, each sorted ascending, groups ordered by their
// smallest member.
struct Partition {
  std::vector<std::vector<AgentId>> groups;

  int size() const { return static_cast<int>(groups.size()); }
  friend bool operator==(const Partition&, const Partition&) = default;
};

Partition Components(const Graph& g);
// Components of the subgraph of `g` restricted to `active` edges.
Partition Components(const Graph& g, EdgeMask active);

int GroupCount(const Graph& g);
int GroupCount(const Graph& g, EdgeMask active);

// Sum over groups of |group|^2 minus n^2. Zero iff connected, negative
// otherwise.
long long AgentGroupIndex(const Graph& g);
long long AgentGroupIndex(const Graph& g, EdgeMask active);
long long AgentGroupIndex(const Partition& p, int num_agents);

// Minimum number of edges whose removal disconnects g (0 if disconnected).
// Computed with unit-capacity max-flow. Throws InvalidInput if n < 2.
int EdgeConnectivity(const Graph& g);

// Throws InvalidInput if the graphs disagree on n.
Graph UnionGraph(std::span<const Graph> graphs);

// Edge set that survives attack and recovery: the base set minus every
// attacked edge, plus recovered edges that were only normally attacked.
inline EdgeMask ResolveEdges(EdgeMask base, EdgeMask strong, EdgeMask normal,
                             EdgeMask recover) {
  return base.Without(strong | normal) | (recover & normal);
}

struct ResolvedGraphs {
  Graph attacked;
  Graph resolved;
};

// Throws InvalidAction when strong and normal overlap or any set has edges
// outside g0.
ResolvedGraphs ApplyActions(const Graph& g0, EdgeMask strong, EdgeMask normal,
                            EdgeMask recover);
ResolvedGraphs ApplyActions(const Graph& g0, std::span<const Edge> strong,
                            std::span<const Edge> normal,
                            std::span<const Edge> recover);

}  // namespace jamgame

#endif  // JAMGAME_GRAPH_H_
