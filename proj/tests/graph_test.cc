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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "fixtures.h"
#include "jamgame/error.h"

namespace jamgame {
namespace {

using testing::Complete;
using testing::Cycle4;
using testing::Path3;
using testing::ThetaGraph;

// Reference components by repeated relaxation of a label array.
std::vector<int> LabelOracle(const Graph& g, EdgeMask active) {
  std::vector<int> label(g.num_agents());
  for (int i = 0; i < g.num_agents(); ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (!active.Contains(e)) continue;
      int u = g.edges()[e].u - 1, v = g.edges()[e].v - 1;
      int m = std::min(label[u], label[v]);
      if (label[u] != m || label[v] != m) {
        label[u] = label[v] = m;
        changed = true;
      }
    }
  }
  return label;
}

int MinCutOracle(const Graph& g) {
  int best = g.num_edges();
  for (std::uint32_t bits = 0; bits < (1u << g.num_edges()); ++bits) {
    EdgeMask removed{bits};
    std::vector<int> label = LabelOracle(g, g.AllEdges().Without(removed));
    bool split = false;
    for (int l : label) split |= l != 0;
    if (split) best = std::min(best, removed.Count());
  }
  return best;
}

TEST(GraphTest, CanonicalEdgeOrder) {
  Graph g(3, {{3, 2}, {2, 1}});
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges()[0], (Edge{1, 2}));
  EXPECT_EQ(g.edges()[1], (Edge{2, 3}));
  EXPECT_EQ(g.EdgeIndex({2, 3}), 1);
  EXPECT_FALSE(g.EdgeIndex({1, 3}).has_value());
}

TEST(GraphTest, RejectsMalformedLiterals) {
  EXPECT_THROW(Graph(3, {{1, 1}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{1, 2}, {2, 1}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{1, 4}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 2}}), InvalidInput);
}

TEST(GraphTest, ComponentsExamples) {
  Partition p = Components(Path3());
  EXPECT_EQ(p.groups, (std::vector<std::vector<AgentId>>{{1, 2, 3}}));
  EXPECT_EQ(GroupCount(Path3()), 1);

  Graph g(4, {{1, 2}, {2, 4}});
  EXPECT_EQ(Components(g).groups,
            (std::vector<std::vector<AgentId>>{{1, 2, 4}, {3}}));

  Graph theta = ThetaGraph();
  EdgeMask cut = theta.MaskOf(std::vector<Edge>{{2, 3}, {3, 4}});
  EXPECT_EQ(Components(theta, theta.AllEdges().Without(cut)).groups,
            (std::vector<std::vector<AgentId>>{{1, 2, 4}, {3}}));
}

TEST(GraphTest, GroupCountExamples) {
  EXPECT_EQ(GroupCount(Graph(4, {})), 4);
  EXPECT_EQ(GroupCount(Path3(), EdgeMask::Bit(1)), 2);
}

TEST(GraphTest, AgentGroupIndexExamples) {
  EXPECT_EQ(AgentGroupIndex(Complete(4)), 0);
  EXPECT_EQ(AgentGroupIndex(Graph(4, {{1, 2}, {2, 4}})), 9 + 1 - 16);
  EXPECT_EQ(AgentGroupIndex(Graph(3, {})), -6);
}

TEST(GraphTest, EdgeConnectivityExamples) {
  EXPECT_EQ(EdgeConnectivity(Path3()), 1);
  EXPECT_EQ(EdgeConnectivity(Cycle4()), 2);
  EXPECT_EQ(EdgeConnectivity(Complete(4)), 3);
  EXPECT_EQ(EdgeConnectivity(Graph(3, {{1, 2}})), 0);
  EXPECT_THROW(EdgeConnectivity(Graph(1, {})), InvalidInput);
}

TEST(GraphTest, EdgeConnectivityMatchesBruteForce) {
  std::mt19937 rng(11);
  for (int c = 0; c < 200; ++c) {
    std::uniform_int_distribution<int> nd(2, 6);
    Graph g = testing::RandomConnectedGraph(rng, nd(rng), 8);
    ASSERT_EQ(EdgeConnectivity(g), MinCutOracle(g)) << "case " << c;
  }
}

TEST(GraphTest, ComponentsMatchLabelOracle) {
  std::mt19937 rng(5);
  for (int c = 0; c < 200; ++c) {
    std::uniform_int_distribution<int> nd(1, 7);
    Graph g = testing::RandomGraph(rng, nd(rng), 0.35);
    Partition p = Components(g);
    std::vector<int> label = LabelOracle(g, g.AllEdges());
    long long squares = 0;
    for (const auto& group : p.groups) {
      for (AgentId a : group) {
        EXPECT_EQ(label[a - 1], label[group.front() - 1]);
      }
      squares += static_cast<long long>(group.size()) * group.size();
    }
    std::vector<int> distinct = label;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    EXPECT_EQ(p.size(), static_cast<int>(distinct.size()));
    const long long n = g.num_agents();
    EXPECT_EQ(AgentGroupIndex(g), squares - n * n);
    EXPECT_EQ(AgentGroupIndex(p, g.num_agents()), AgentGroupIndex(g));
  }
}

TEST(GraphTest, UnionGraphExamples) {
  Graph g = Path3();
  std::vector<Graph> one{g};
  EXPECT_EQ(UnionGraph(one), g);
  std::vector<Graph> two{Graph(3, {{1, 2}}), Graph(3, {{2, 3}})};
  EXPECT_EQ(UnionGraph(two), g);
  std::vector<Graph> same{Graph(3, {{1, 2}}), Graph(3, {{1, 2}})};
  EXPECT_EQ(UnionGraph(same), Graph(3, {{1, 2}}));
  std::vector<Graph> bad{Graph(3, {}), Graph(4, {})};
  EXPECT_THROW(UnionGraph(bad), InvalidInput);
}

TEST(GraphTest, ApplyActionsExamples) {
  Graph g = Path3();
  ResolvedGraphs none = ApplyActions(g, EdgeMask{}, EdgeMask{}, EdgeMask{});
  EXPECT_EQ(none.attacked, g);
  EXPECT_EQ(none.resolved, g);

  std::vector<Edge> e12{{1, 2}};
  std::vector<Edge> empty;
  ResolvedGraphs normal = ApplyActions(g, empty, e12, e12);
  EXPECT_EQ(normal.attacked, Graph(3, {{2, 3}}));
  EXPECT_EQ(normal.resolved, g);

  ResolvedGraphs strong = ApplyActions(g, e12, empty, e12);
  EXPECT_EQ(strong.resolved, Graph(3, {{2, 3}}));
}

TEST(GraphTest, ApplyActionsRejectsBadSets) {
  Graph g = Path3();
  EXPECT_THROW(ApplyActions(g, EdgeMask::Bit(0), EdgeMask::Bit(0), EdgeMask{}),
               InvalidAction);
  EXPECT_THROW(ApplyActions(g, EdgeMask::Bit(2), EdgeMask{}, EdgeMask{}),
               InvalidAction);
  std::vector<Edge> missing{{1, 3}};
  std::vector<Edge> empty;
  EXPECT_THROW(ApplyActions(g, empty, empty, missing), InvalidAction);
}

TEST(GraphTest, ResolvedEdgesNeverExceedSurvivorsPlusRecoverable) {
  std::mt19937 rng(17);
  for (int c = 0; c < 200; ++c) {
    Graph g = testing::RandomConnectedGraph(rng, 5, 8);
    int m = g.num_edges();
    EdgeMask strong = testing::RandomMask(rng, m);
    EdgeMask normal = testing::RandomMask(rng, m).Without(strong);
    EdgeMask recover = testing::RandomMask(rng, m);
    ResolvedGraphs r = ApplyActions(g, strong, normal, recover);
    EdgeMask survivors = g.AllEdges().Without(strong | normal);
    EdgeMask allowed = survivors | (recover & normal);
    for (const Edge& e : r.resolved.edges()) {
      EXPECT_TRUE(allowed.Contains(*g.EdgeIndex(e)));
    }
    EXPECT_EQ(r.resolved.num_edges(), allowed.Count());
  }
}

TEST(GraphTest, LexLessOrdersSortedMemberLists) {
  EXPECT_TRUE(LexLess(EdgeMask{}, EdgeMask::Bit(0)));
  EXPECT_TRUE(LexLess(EdgeMask::Bit(0), EdgeMask::Bit(0) | EdgeMask::Bit(1)));
  EXPECT_TRUE(LexLess(EdgeMask::Bit(0) | EdgeMask::Bit(1), EdgeMask::Bit(1)));
  EXPECT_FALSE(LexLess(EdgeMask::Bit(1), EdgeMask::Bit(1)));
}

}  // namespace
}  // namespace jamgame
