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

#ifndef JAMGAME_TESTS_CONTEXTS_H_
#define JAMGAME_TESTS_CONTEXTS_H_

#include <vector>

#include "jamgame/game.h"
#include "jamgame/rolling.h"

namespace jamgame::testing {

struct Decision {
  Player mover = Player::kAttacker;
  SolveContext ctx;
  Plan recorded;  // the plan Run produced for this decision
};

// Rebuilds the exact solve context of every decision in a trace: the history
// visible at that instant, the knowledge derived from it, the state and both
// ledgers.
inline std::vector<Decision> DecisionsOf(const GameSpec& spec,
                                         const Trace& trace) {
  std::vector<Decision> out;
  std::size_t ia = 0, id = 0;
  for (const TraceStep& row : trace.steps) {
    const TimeStep k = row.k;
    const StateVector& x =
        k == 0 ? trace.initial_state : trace.steps[k - 1].x;
    double spent_a = k == 0 ? 0.0 : trace.steps[k - 1].attacker_spent;
    double spent_d = k == 0 ? 0.0 : trace.steps[k - 1].defender_spent;
    double wasted_d = k == 0 ? 0.0 : trace.steps[k - 1].defender_wasted;
    for (Player p : {Player::kAttacker, Player::kDefender}) {
      bool decided = p == Player::kAttacker ? row.attacker_decided
                                            : row.defender_decided;
      if (!decided) continue;
      History h;
      std::size_t na = ia;
      h.attacker_plans.assign(trace.history.attacker_plans.begin(),
                              trace.history.attacker_plans.begin() + na);
      h.defender_plans.assign(trace.history.defender_plans.begin(),
                              trace.history.defender_plans.begin() + id);
      std::size_t nk = k + (p == Player::kDefender ? 1 : 0);
      h.applied_attacks.assign(trace.history.applied_attacks.begin(),
                               trace.history.applied_attacks.begin() + nk);
      Decision d;
      d.mover = p;
      d.ctx.spec = spec;
      d.ctx.time = k;
      d.ctx.decision_index = k / spec.periods.of(p) + 1;
      d.ctx.state = x;
      d.ctx.attacker_ledger = EnergyLedger(spec.attacker_energy, spent_a, 0.0);
      d.ctx.defender_ledger =
          EnergyLedger(spec.defender_energy, spent_d, wasted_d);
      d.ctx.known = KnowledgeFor(spec, p, k, h);
      d.recorded = p == Player::kAttacker ? trace.history.attacker_plans[ia]
                                          : trace.history.defender_plans[id];
      out.push_back(std::move(d));
      if (p == Player::kAttacker) {
        ++ia;
      } else {
        ++id;
      }
    }
  }
  return out;
}

}  // namespace jamgame::testing

#endif  // JAMGAME_TESTS_CONTEXTS_H_
