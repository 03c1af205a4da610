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

// Generated-case properties over random small games and traces.
#include <gtest/gtest.h>

#include <random>

#include "contexts.h"
#include "fixtures.h"
#include "jamgame/analysis.h"
#include "jamgame/energy.h"
#include "properties.h"

namespace jamgame::testing {
namespace {

void ExpectHolds(const PropertyResult& r) {
  EXPECT_GE(r.cases, kPropertyCases);
  EXPECT_TRUE(r.ok()) << r.failures << " failures; " << r.first_failure;
}

TEST(PropertyTest, StateDifferenceNeverIncreases) {
  ExpectHolds(CheckStateDifferenceNonIncreasing());
}

TEST(PropertyTest, AgentGroupIndexSign) {
  ExpectHolds(CheckAgentGroupIndexSign());
}

TEST(PropertyTest, LedgersStayUnderBudget) { ExpectHolds(CheckLedgerSafety()); }

TEST(PropertyTest, RecoveryNeverRaisesOneStepDifference) {
  ExpectHolds(CheckRecoveryMonotonicity());
}

TEST(PropertyTest, RecoveryNeverRaisesDifferenceUnderFullNormalAttack) {
  ExpectHolds(CheckRecoveryMonotonicityAllEdges());
}

// Smallest counterexample to the general form: on the path with edge (1,2)
// intact, restoring a normally attacked (2,3) raises z from 2 to 8/3.
TEST(PropertyTest, RecoveryCanRaiseDifferenceWhenOtherEdgesSurvive) {
  Graph g = Path3();
  WeightMatrix w = WeightMatrix::Default(g);
  StateVector x{0, 3, 2};
  double none = StateDifference(ConsensusStep(x, g, EdgeMask::Bit(0), w));
  double recovered = StateDifference(ConsensusStep(x, g, g.AllEdges(), w));
  EXPECT_NEAR(none, 2.0, 1e-12);
  EXPECT_NEAR(recovered, 8.0 / 3.0, 1e-12);
}

TEST(PropertyTest, EffectiveRecoveryIsPlannedAndNormal) {
  ExpectHolds(CheckEffectiveRecovery());
}

TEST(PropertyTest, WasteFreeModeNeverWastes) {
  int cases = 0;
  for (const GeneratedRun& r : GeneratedRuns()) {
    if (r.spec.cost_model.waste != WastePolicy::kFree) continue;
    ++cases;
    for (const TraceStep& row : r.trace.steps) {
      ASSERT_EQ(row.defender_wasted, 0.0);
    }
  }
  EXPECT_GT(cases, 50);
}

TEST(PropertyTest, PlansHaveFullHorizon) {
  for (const GeneratedRun& r : GeneratedRuns()) {
    for (const Plan& p : r.trace.history.attacker_plans) {
      ASSERT_EQ(p.size(), r.spec.horizons.attacker);
    }
    for (const Plan& p : r.trace.history.defender_plans) {
      ASSERT_EQ(p.size(), r.spec.horizons.defender);
    }
  }
}

// Each applied attack is step k - t of the latest attacker plan decided at
// t <= k, and k - t is inside the attacker's period.
TEST(PropertyTest, OnlyInPeriodStepsAreApplied) {
  for (const GeneratedRun& r : GeneratedRuns()) {
    const auto& plans = r.trace.history.attacker_plans;
    for (const TraceStep& row : r.trace.steps) {
      const Plan* cur = nullptr;
      for (const Plan& p : plans) {
        if (p.start_time <= row.k) cur = &p;
      }
      ASSERT_NE(cur, nullptr);
      int offset = row.k - cur->start_time;
      ASSERT_LT(offset, r.spec.periods.attacker);
      ASSERT_EQ(row.attack, cur->attack(offset));
    }
  }
}

TEST(PropertyTest, RunsAreDeterministic) {
  RunOptions opt;
  opt.max_steps = 6;
  opt.stop_on_convergence = false;
  const auto& runs = GeneratedRuns();
  for (std::size_t i = 0; i < runs.size(); i += 10) {
    Trace again = jamgame::Run(runs[i].spec, runs[i].trace.initial_state, opt);
    ASSERT_EQ(again.steps, runs[i].trace.steps);
  }
}

// The defender never picks a first-step recovery worth strictly less to it
// than recovering nothing against the attack it observed.
TEST(PropertyTest, DefenderFirstStepNoWorseThanIdle) {
  int checked = 0;
  for (const GeneratedRun& r : GeneratedRuns()) {
    if (r.spec.utility.b != 0.0 ||
        r.spec.cost_model.waste != WastePolicy::kFree ||
        r.spec.horizons.defender != 1) {
      continue;
    }
    for (const Decision& d : DecisionsOf(r.spec, r.trace)) {
      if (d.mover != Player::kDefender) continue;
      ++checked;
      const JointStep& first = d.recorded.path[0];
      StepOutcome chosen =
          ResolveStep(r.spec, d.ctx.state, first.attack, first.defense);
      StepOutcome idle =
          ResolveStep(r.spec, d.ctx.state, first.attack, DefenseAction{});
      ASSERT_LE(chosen.payoff, idle.payoff * (1 + 1e-12) + 1e-12);
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(PropertyTest, EdgeModeRunsRespectTheClusterBound) {
  std::mt19937 rng(3);
  int cases = 0;
  while (cases < kPropertyCases) {
    GameSpec s = RandomSpec(rng);
    if (s.cost_model.mode != AttackMode::kEdge) continue;
    s.horizons = {1, 1};
    s.periods = {1, 1};
    ++cases;
    RunOptions opt;
    opt.max_steps = 200;
    Trace t = jamgame::Run(s, RandomState(rng, s.graph.num_agents()), opt);
    Verdict v = ConsensusVerdict(t, s, VerdictOptions{});
    if (v.outcome == Outcome::kUndecided) continue;
    ASSERT_LE(v.clusters.size(), ClusterUpperBound(s).value)
        << "case " << cases;
  }
}

}  // namespace
}  // namespace jamgame::testing
