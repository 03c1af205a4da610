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

#include "jamgame/rolling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jamgame/error.h"

namespace jamgame {
namespace {

TimeStep FloorToMultiple(TimeStep t, int period) { return t / period * period; }

// Plan of `p` in force at k, if any.
const Plan* PlanInForce(const History& h, const GameSpec& spec, Player p,
                        TimeStep k) {
  const auto& plans = h.plans(p);
  if (plans.empty()) return nullptr;
  const Plan& last = plans.back();
  if (last.start_time <= k && k < last.start_time + spec.periods.of(p)) {
    return &last;
  }
  return nullptr;
}

}  // namespace

Schedule Schedule::From(const Periods& p) {
  if (p.attacker < 1 || p.defender < 1) {
    throw InvalidInput("game periods must be >= 1");
  }
  return {p.attacker, p.defender, std::lcm(p.attacker, p.defender)};
}

DecisionTimes ComputeDecisionTimes(const Schedule& s, int horizon) {
  if (horizon < 1) throw InvalidInput("decision horizon must be >= 1");
  DecisionTimes d;
  for (TimeStep k = 0; k < horizon; ++k) {
    if (k % s.attacker_period == 0) d.attacker.push_back(k);
    if (k % s.defender_period == 0) d.defender.push_back(k);
    if (k % s.lcm_period == 0) d.common.push_back(k);
  }
  return d;
}

bool RecallsPlan(const GameSpec& spec, Player knower, TimeStep k,
                 TimeStep opponent_time) {
  const Player opp = Opponent(knower);
  if (opponent_time > k) return false;
  const int lcm = std::lcm(spec.periods.attacker, spec.periods.defender);
  if (opponent_time < k && opponent_time % lcm == 0) return true;
  // Within one step the attacker decides first, so only a defender can
  // learn a plan decided at its own decision time.
  if (opponent_time == k && knower == Player::kAttacker) return false;
  const int h_self = spec.horizons.of(knower);
  const int h_opp = spec.horizons.of(opp);
  if (h_self <= h_opp) return false;
  TimeStep window_start = FloorToMultiple(opponent_time, spec.periods.of(knower));
  return opponent_time + h_opp <= window_start + h_self;
}

KnownSteps KnowledgeFor(const GameSpec& spec, Player mover, TimeStep k,
                        const History& history) {
  KnownSteps known;
  const Player opp = Opponent(mover);
  if (const Plan* plan = PlanInForce(history, spec, opp, k);
      plan != nullptr && RecallsPlan(spec, mover, k, plan->start_time)) {
    const TimeStep stop = plan->start_time + spec.periods.of(opp);
    for (TimeStep s = k; s < stop; ++s) {
      const JointStep& step = plan->path[s - plan->start_time];
      if (opp == Player::kAttacker) {
        known.attacks[s] = step.attack;
      } else {
        known.defenses[s] = step.defense;
      }
    }
  }
  if (mover == Player::kDefender &&
      k < static_cast<TimeStep>(history.applied_attacks.size())) {
    known.attacks[k] = history.applied_attacks[k];
  }
  return known;
}

void ValidateRunOptions(const RunOptions& o) {
  if (o.max_steps < 1) throw InvalidInput("run.max_steps must be >= 1");
  if (!(o.convergence_tol > 0.0) || !std::isfinite(o.convergence_tol)) {
    throw InvalidInput("run.convergence_tol must be positive");
  }
  if (o.convergence_window < 1) {
    throw InvalidInput("run.convergence_window must be >= 1");
  }
}

Trace Run(const GameSpec& spec, const StateVector& x0, const RunOptions& opt) {
  ValidateGameSpec(spec);
  ValidateRunOptions(opt);
  if (static_cast<int>(x0.size()) != spec.graph.num_agents()) {
    throw InvalidInput("initial state length does not match the agent count");
  }
  Trace trace;
  trace.initial_state = x0;
  EnergyLedger attacker(spec.attacker_energy);
  EnergyLedger defender(spec.defender_energy);
  StateVector x = x0;
  int quiet_steps = 0;

  auto solve = [&](Player p, TimeStep k) {
    SolveContext ctx;
    ctx.spec = spec;
    ctx.time = k;
    ctx.decision_index = k / spec.periods.of(p) + 1;
    ctx.state = x;
    ctx.attacker_ledger = attacker;
    ctx.defender_ledger = defender;
    ctx.known = KnowledgeFor(spec, p, k, trace.history);
    return SolveDecision(ctx, p, &trace.stats);
  };

  for (TimeStep k = 0; k < opt.max_steps; ++k) {
    TraceStep row;
    row.k = k;
    if (k % spec.periods.attacker == 0) {
      trace.history.attacker_plans.push_back(solve(Player::kAttacker, k));
      row.attacker_decided = true;
      row.attacker_value = trace.history.attacker_plans.back().value;
    }
    const Plan& a_plan = trace.history.attacker_plans.back();
    row.attack = a_plan.attack(k - a_plan.start_time);
    row.attacker_decision = a_plan.decision_index;
    trace.history.applied_attacks.push_back(row.attack);

    if (k % spec.periods.defender == 0) {
      trace.history.defender_plans.push_back(solve(Player::kDefender, k));
      row.defender_decided = true;
      row.defender_value = trace.history.defender_plans.back().value;
    }
    const Plan& d_plan = trace.history.defender_plans.back();
    row.defender_decision = d_plan.decision_index;
    DefenseAction planned = ClipRecovery(
        spec, d_plan.defense(k - d_plan.start_time), row.attack.normal,
        defender.spent(), k);
    row.recover_planned = planned.recover;

    StepOutcome out = ResolveStep(spec, x, row.attack, planned);
    attacker.Commit(out.attack_cost, 0.0, k);
    defender.Commit(out.defense.cost, out.defense.waste, k);
    row.recover_effective = out.effective_recovery;
    row.resolved = out.resolved;
    row.groups = GroupCount(spec.graph, out.resolved);
    row.payoff = out.payoff;
    row.attacker_spent = attacker.spent();
    row.attacker_budget = BudgetAt(spec.attacker_energy, k);
    row.defender_spent = defender.spent();
    row.defender_wasted = defender.wasted();
    row.defender_budget = BudgetAt(spec.defender_energy, k);

    double change = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      change = std::max(change, std::abs(out.x_next[i] - x[i]));
    }
    x = out.x_next;
    row.x = x;
    trace.steps.push_back(std::move(row));

    quiet_steps = change < opt.convergence_tol ? quiet_steps + 1 : 0;
    if (quiet_steps >= opt.convergence_window) {
      trace.converged = true;
      if (opt.stop_on_convergence) break;
    }
  }
  return trace;
}

}  // namespace jamgame
