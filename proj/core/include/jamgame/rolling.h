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

#ifndef JAMGAME_ROLLING_H_
#define JAMGAME_ROLLING_H_

#include <vector>

#include "jamgame/game.h"

namespace jamgame {

struct Schedule {
  int attacker_period = 1;
  int defender_period = 1;
  int lcm_period = 1;

  static Schedule From(const Periods& p);
  int period(Player p) const {
    return p == Player::kAttacker ? attacker_period : defender_period;
  }
};

struct DecisionTimes {
  std::vector<TimeStep> attacker;
  std::vector<TimeStep> defender;
  std::vector<TimeStep> common;  // joint games, multiples of lcm
};

// Decision times in [0, horizon). Throws InvalidInput if horizon < 1.
DecisionTimes ComputeDecisionTimes(const Schedule& s, int horizon);

// Every plan either player has produced, plus the attacks actually applied
// (applied_attacks[k] is the attack at step k).
struct History {
  std::vector<Plan> attacker_plans;
  std::vector<Plan> defender_plans;
  std::vector<AttackAction> applied_attacks;

  const std::vector<Plan>& plans(Player p) const {
    return p == Player::kAttacker ? attacker_plans : defender_plans;
  }
};

// Whether `knower` deciding at k can recall the opponent plan decided at
// opponent_time (which must still be in force at k): it was decided at a
// joint game time strictly before k, or the knower has the strictly longer
// horizon and the opponent's whole horizon lies inside the knower's window
// current at opponent_time.
bool RecallsPlan(const GameSpec& spec, Player knower, TimeStep k,
                 TimeStep opponent_time);

// Opponent steps the mover treats as data at its decision time k: the
// still-applied part of a recalled opponent plan, and for the defender the
// attack it observes at k.
KnownSteps KnowledgeFor(const GameSpec& spec, Player mover, TimeStep k,
                        const History& history);

struct TraceStep {
  TimeStep k = 0;
  bool attacker_decided = false;
  bool defender_decided = false;
  int attacker_decision = 0;  // l^A of the plan applied at k
  int defender_decision = 0;  // l^D of the plan applied at k
  double attacker_value = 0.0;  // plan value when decided at k, else 0
  double defender_value = 0.0;
  AttackAction attack;
  EdgeMask recover_planned;
  EdgeMask recover_effective;
  EdgeMask resolved;
  int groups = 0;
  double payoff = 0.0;  // attacker's step payoff
  double attacker_spent = 0.0;
  double attacker_budget = 0.0;
  double defender_spent = 0.0;
  double defender_wasted = 0.0;
  double defender_budget = 0.0;
  StateVector x;  // state after the update, x[k+1]

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct RunOptions {
  int max_steps = 500;
  bool stop_on_convergence = true;
  double convergence_tol = 1e-9;
  int convergence_window = 10;

  friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

void ValidateRunOptions(const RunOptions& o);

struct Trace {
  StateVector initial_state;
  std::vector<TraceStep> steps;
  History history;
  bool converged = false;
  SolveStats stats;

  const StateVector& final_state() const {
    return steps.empty() ? initial_state : steps.back().x;
  }
};

// Marches k = 0, 1, ... Each step: the attacker re-plans if k is one of its
// decision times, applies its plan step; the defender re-plans likewise
// after observing the attack, applies its (budget-clipped) planned recovery;
// only recover ∩ normal takes effect; then the consensus update runs and
// both ledgers are charged. Stops at max_steps or, if enabled, once
// max_i |x_i[k+1] - x_i[k]| < convergence_tol for convergence_window
// consecutive steps. Throws InternalError on a ledger overdraft.
Trace Run(const GameSpec& spec, const StateVector& x0, const RunOptions& opt);

}  // namespace jamgame

#endif  // JAMGAME_ROLLING_H_
