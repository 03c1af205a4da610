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

#ifndef JAMGAME_TESTS_PROPERTIES_H_
#define JAMGAME_TESTS_PROPERTIES_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "jamgame/dynamics.h"
#include "jamgame/energy.h"
#include "jamgame/game.h"
#include "jamgame/graph.h"
#include "jamgame/rolling.h"

namespace jamgame::testing {

// Outcome of one generated-case property: how many cases ran and the first
// counterexample, if any.
struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void Fail(int index, const std::string& what) {
    if (failures++ == 0) {
      first_failure = "case " + std::to_string(index) + ": " + what;
    }
  }
  bool ok() const { return failures == 0; }
};

inline constexpr int kPropertyCases = 200;

// Multiples of 0.5 keep all ledger arithmetic exact.
inline double Halves(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng) * 0.5;
}

// A small random game: 2..4 agents, at most 3 edges, horizons <= 2, every
// energy regime from idle to abundant, both waste policies and some node
// mode instances.
inline GameSpec RandomSpec(std::mt19937& rng) {
  std::uniform_int_distribution<int> nd(2, 4);
  const int n = nd(rng);
  GameSpec s;
  s.graph = RandomConnectedGraph(rng, n, 3);
  s.weights = WeightMatrix::Default(s.graph);
  s.attacker_energy.beta_normal = Halves(rng, 1, 2);
  s.attacker_energy.beta_strong =
      s.attacker_energy.beta_normal + Halves(rng, 1, 2);
  s.attacker_energy.rho = Halves(rng, 1, 8);
  s.attacker_energy.kappa = s.attacker_energy.rho + Halves(rng, 0, 4);
  s.defender_energy.beta_recover = Halves(rng, 1, 2);
  s.defender_energy.rho = Halves(rng, 1, 4);
  s.defender_energy.kappa = s.defender_energy.rho + Halves(rng, 0, 2);
  s.cost_model.waste =
      rng() % 2 ? WastePolicy::kCharged : WastePolicy::kFree;
  if (rng() % 5 == 0) {
    s.cost_model.mode = AttackMode::kNode;
    s.attacker_energy.beta_node_normal = Halves(rng, 1, 2);
    s.attacker_energy.beta_node_strong =
        s.attacker_energy.beta_node_normal + Halves(rng, 1, 2);
  }
  s.utility.a = 1.0;
  s.utility.b = rng() % 3 == 0 ? 0.5 : 0.0;
  std::uniform_int_distribution<int> hd(1, 2);
  s.horizons.attacker = hd(rng);
  s.horizons.defender = hd(rng);
  s.periods.attacker = std::uniform_int_distribution<int>(1, s.horizons.attacker)(rng);
  s.periods.defender = std::uniform_int_distribution<int>(1, s.horizons.defender)(rng);
  return s;
}

struct GeneratedRun {
  GameSpec spec;
  Trace trace;
};

// kPropertyCases short runs from a fixed seed, computed once per process.
inline const std::vector<GeneratedRun>& GeneratedRuns() {
  static const std::vector<GeneratedRun> runs = [] {
    std::mt19937 rng(20260101);
    std::vector<GeneratedRun> out;
    RunOptions opt;
    opt.max_steps = 6;
    opt.stop_on_convergence = false;
    for (int i = 0; i < kPropertyCases; ++i) {
      GeneratedRun r;
      r.spec = RandomSpec(rng);
      StateVector x0 = RandomState(rng, r.spec.graph.num_agents());
      r.trace = jamgame::Run(r.spec, x0, opt);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

// (a) z never increases along a trace.
inline PropertyResult CheckStateDifferenceNonIncreasing() {
  PropertyResult res;
  const auto& runs = GeneratedRuns();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    ++res.cases;
    const Trace& t = runs[i].trace;
    double prev = StateDifference(t.initial_state);
    for (const TraceStep& row : t.steps) {
      double z = StateDifference(row.x);
      if (z > prev * (1 + 1e-12) + 1e-12) {
        std::ostringstream m;
        m << "z rose from " << prev << " to " << z << " at k=" << row.k;
        res.Fail(static_cast<int>(i), m.str());
        break;
      }
      prev = z;
    }
  }
  return res;
}

// (b) c(G') <= 0, with equality iff G' is connected. The expected value is
// recomputed from a union-find labelling.
inline PropertyResult CheckAgentGroupIndexSign() {
  PropertyResult res;
  std::mt19937 rng(7);
  for (int i = 0; i < kPropertyCases; ++i) {
    ++res.cases;
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    Graph g = RandomGraph(rng, n, std::uniform_real_distribution<double>(0, 1)(rng));
    std::vector<int> parent(n + 1);
    for (int v = 0; v <= n; ++v) parent[v] = v;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const Edge& e : g.edges()) parent[find(e.u)] = find(e.v);
    std::vector<long long> size(n + 1, 0);
    for (int v = 1; v <= n; ++v) ++size[find(v)];
    long long expected = -static_cast<long long>(n) * n;
    int roots = 0;
    for (int v = 1; v <= n; ++v) {
      expected += size[v] * size[v];
      roots += size[v] > 0;
    }
    long long c = AgentGroupIndex(g);
    if (c != expected || c > 0 || ((c == 0) != (roots == 1))) {
      res.Fail(i, "c=" + std::to_string(c) + " expected " +
                      std::to_string(expected));
    }
  }
  return res;
}

// (c) Both ledgers stay under their budget lines at every committed step.
inline PropertyResult CheckLedgerSafety() {
  PropertyResult res;
  const auto& runs = GeneratedRuns();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    ++res.cases;
    const GeneratedRun& r = runs[i];
    for (const TraceStep& row : r.trace.steps) {
      double ba = BudgetAt(r.spec.attacker_energy, row.k);
      double bd = BudgetAt(r.spec.defender_energy, row.k);
      if (row.attacker_spent > ba + 1e-9 || row.defender_spent > bd + 1e-9 ||
          row.defender_wasted > row.defender_spent + 1e-9) {
        std::ostringstream m;
        m << "overdraft at k=" << row.k << ": attacker " << row.attacker_spent
          << "/" << ba << ", defender " << row.defender_spent << "/" << bd;
        res.Fail(static_cast<int>(i), m.str());
        break;
      }
    }
  }
  return res;
}

// (d) For a random state and attack on a graph with at most 4 edges, the
// one-step z without recovery is at least z under every recovery set.
inline PropertyResult CheckRecoveryMonotonicity() {
  PropertyResult res;
  std::mt19937 rng(11);
  for (int i = 0; i < kPropertyCases; ++i) {
    ++res.cases;
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    GameSpec s;
    s.graph = RandomConnectedGraph(rng, n, 4);
    s.weights = WeightMatrix::Default(s.graph);
    const int m = s.graph.num_edges();
    StateVector x = RandomState(rng, n);
    AttackAction a;
    for (int e = 0; e < m; ++e) {
      int d = std::uniform_int_distribution<int>(0, 2)(rng);
      if (d == 1) a.normal = a.normal | EdgeMask::Bit(e);
      if (d == 2) a.strong = a.strong | EdgeMask::Bit(e);
    }
    double none = StateDifference(
        ConsensusStep(x, s.graph, ResolveEdges(s.graph.AllEdges(), a.strong,
                                               a.normal, EdgeMask{}),
                      s.weights));
    for (std::uint32_t r = 0; r < (1u << m); ++r) {
      double z = StateDifference(ConsensusStep(
          x, s.graph,
          ResolveEdges(s.graph.AllEdges(), a.strong, a.normal, EdgeMask{r}),
          s.weights));
      if (z > none * (1 + 1e-12) + 1e-12) {
        std::ostringstream msg;
        msg << "recovery " << r << " raised z from " << none << " to " << z;
        res.Fail(i, msg.str());
        break;
      }
    }
  }
  return res;
}

// The all-edges form of (d): with every edge attacked normally, recovering
// any subset never raises the one-step z above the no-recovery value.
inline PropertyResult CheckRecoveryMonotonicityAllEdges() {
  PropertyResult res;
  std::mt19937 rng(13);
  for (int i = 0; i < kPropertyCases; ++i) {
    ++res.cases;
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    Graph g = RandomConnectedGraph(rng, n, 4);
    WeightMatrix w = WeightMatrix::Default(g);
    StateVector x = RandomState(rng, n);
    const EdgeMask all = g.AllEdges();
    double none = StateDifference(
        ConsensusStep(x, g, ResolveEdges(all, EdgeMask{}, all, EdgeMask{}), w));
    for (std::uint32_t r = 0; r < (1u << g.num_edges()); ++r) {
      double z = StateDifference(ConsensusStep(
          x, g, ResolveEdges(all, EdgeMask{}, all, EdgeMask{r}), w));
      if (z > none * (1 + 1e-12) + 1e-12) {
        res.Fail(i, "recovery " + std::to_string(r) + " raised z");
        break;
      }
    }
  }
  return res;
}

// (e) The effective recovery is exactly planned ∩ normal-attacked, and the
// resolved edges follow from it.
inline PropertyResult CheckEffectiveRecovery() {
  PropertyResult res;
  const auto& runs = GeneratedRuns();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    ++res.cases;
    const GeneratedRun& r = runs[i];
    for (const TraceStep& row : r.trace.steps) {
      EdgeMask expected = row.recover_planned & row.attack.normal;
      EdgeMask resolved = ResolveEdges(r.spec.graph.AllEdges(),
                                       row.attack.strong, row.attack.normal,
                                       row.recover_planned);
      if (row.recover_effective != expected || row.resolved != resolved) {
        res.Fail(static_cast<int>(i),
                 "recovery mismatch at k=" + std::to_string(row.k));
        break;
      }
    }
  }
  return res;
}

}  // namespace jamgame::testing

#endif  // JAMGAME_TESTS_PROPERTIES_H_
