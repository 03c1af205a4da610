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

#ifndef JAMGAME_GAME_H_
#define JAMGAME_GAME_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "jamgame/dynamics.h"
#include "jamgame/energy.h"
#include "jamgame/graph.h"

namespace jamgame {

enum class Player { kAttacker, kDefender };

std::string PlayerName(Player p);
inline Player Opponent(Player p) {
  return p == Player::kAttacker ? Player::kDefender : Player::kAttacker;
}

// Strong and normal edge sets are always populated. In node mode the node
// sets record the attacked agents and the edge sets are their images:
// strong = edges incident to strong nodes, normal = edges incident to normal
// nodes minus strong.
struct AttackAction {
  EdgeMask strong;
  EdgeMask normal;
  NodeMask strong_nodes;
  NodeMask normal_nodes;

  friend bool operator==(const AttackAction&, const AttackAction&) = default;
};

struct DefenseAction {
  EdgeMask recover;

  friend bool operator==(const DefenseAction&, const DefenseAction&) = default;
};

struct JointStep {
  AttackAction attack;
  DefenseAction defense;

  friend bool operator==(const JointStep&, const JointStep&) = default;
};

struct UtilityWeights {
  double a = 1.0;
  double b = 0.0;

  friend bool operator==(const UtilityWeights&, const UtilityWeights&) =
      default;
};

struct Horizons {
  int attacker = 1;
  int defender = 1;

  int of(Player p) const { return p == Player::kAttacker ? attacker : defender; }
  friend bool operator==(const Horizons&, const Horizons&) = default;
};

struct Periods {
  int attacker = 1;
  int defender = 1;

  int of(Player p) const { return p == Player::kAttacker ? attacker : defender; }
  friend bool operator==(const Periods&, const Periods&) = default;
};

// Everything about the game that stays fixed over a run.
struct GameSpec {
  Graph graph;
  WeightMatrix weights;
  EnergyParams attacker_energy;
  EnergyParams defender_energy;
  CostModel cost_model;
  UtilityWeights utility;
  Horizons horizons;
  Periods periods;

  const EnergyParams& energy(Player p) const {
    return p == Player::kAttacker ? attacker_energy : defender_energy;
  }
  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

// Throws InvalidInput on any violated parameter invariant, including
// T > h for either player and a = b = 0.
void ValidateGameSpec(const GameSpec& spec);

// Opponent actions the mover treats as data rather than decisions. A
// defender mover always has the observed same-step attack here.
struct KnownSteps {
  std::map<TimeStep, AttackAction> attacks;
  std::map<TimeStep, DefenseAction> defenses;

  friend bool operator==(const KnownSteps&, const KnownSteps&) = default;
};

struct SolveContext {
  GameSpec spec;
  TimeStep time = 0;
  int decision_index = 1;
  StateVector state;
  EnergyLedger attacker_ledger;
  EnergyLedger defender_ledger;
  KnownSteps known;
};

// The mover's equilibrium path over its own horizon: path[i] is the joint
// step at start_time + i as predicted by the owner. Only the owner's half of
// each step is a decision; the other half is the owner's prediction.
// `value` is the owner's utility along the path.
struct Plan {
  Player owner = Player::kAttacker;
  int decision_index = 1;
  TimeStep start_time = 0;
  std::vector<JointStep> path;
  double value = 0.0;

  int size() const { return static_cast<int>(path.size()); }
  const AttackAction& attack(int step) const { return path[step].attack; }
  const DefenseAction& defense(int step) const { return path[step].defense; }
};

// Same owner, index, start and path; values within 1e-9 relative.
bool SamePlan(const Plan& a, const Plan& b);

struct SolveStats {
  long long nodes = 0;      // joint steps simulated
  long long submodels = 0;  // emulated opponent decisions solved
};

// Feasible attacks at time t for an attacker that has spent `spent`, in
// canonical order (base-3 counter over edges, or nodes in node mode, with
// digit 0 untouched, 1 normal, 2 strong).
std::vector<AttackAction> EnumerateAttacks(const GameSpec& spec, double spent,
                                           TimeStep t);
// Feasible recovery sets at time t given the same-step normal attack, in
// increasing mask order.
std::vector<DefenseAction> EnumerateDefenses(const GameSpec& spec,
                                             double spent,
                                             EdgeMask attacked_normal,
                                             TimeStep t);

double AttackActionCost(const GameSpec& spec, const AttackAction& a);
// Throws InvalidAction if node sets overlap or reference unknown agents.
AttackAction NodeAttack(const Graph& g, NodeMask strong, NodeMask normal);

// Attacker's per-step payoff a*z(x_next) - b*c(resolved); the defender's is
// the negation.
double StepPayoff(const StateVector& x_next, const Graph& base,
                  EdgeMask resolved, const UtilityWeights& w);
double StepPayoff(const StateVector& x_next, const Graph& resolved,
                  const UtilityWeights& w);

// One joint step applied to state x. Recovery only restores normally
// attacked edges; the defender is charged per the cost model.
struct StepOutcome {
  EdgeMask effective_recovery;
  EdgeMask resolved;
  StateVector x_next;
  double payoff = 0.0;
  double attack_cost = 0.0;
  DefenseCharge defense;
};

StepOutcome ResolveStep(const GameSpec& spec, const StateVector& x,
                        const AttackAction& a, const DefenseAction& d);

// Drops the highest-index edges of a committed recovery set until the
// defender can pay for it at time t.
DefenseAction ClipRecovery(const GameSpec& spec, DefenseAction d,
                           EdgeMask attacked_normal, double spent, TimeStep t);

// True iff the player can pay its full action set (every edge, or every
// node, at the normal/recover rate) at each step from t to window_end - 1.
bool Abundant(const GameSpec& spec, Player p, double spent, TimeStep t,
              TimeStep window_end);

// Tie-break among equally valued candidates: an abundant player prefers
// more attacked (recovered) units, otherwise fewer; attack ties then prefer
// the dearer (abundant) or cheaper action; the rest is lexicographic on the
// canonical edge (node) order, strong set first. Throws InternalError on an
// empty list. Returns an index into `candidates`.
int TieBreakAttack(std::span<const AttackAction> candidates,
                   const GameSpec& spec, bool abundant);
int TieBreakDefense(std::span<const DefenseAction> candidates, bool abundant);

// Values are the attacker's utility. The attacker picks the largest, the
// defender the smallest; candidates within 1e-9 relative of the optimum go
// to the tie-break.
int SelectAttack(std::span<const AttackAction> options,
                 std::span<const double> values, const GameSpec& spec,
                 bool abundant);
int SelectDefense(std::span<const DefenseAction> options,
                  std::span<const double> values, bool abundant);

// Subgame-perfect plan for `mover` deciding at ctx.time, over
// [ctx.time, ctx.time + h_mover). Within a step the attacker moves first.
// The mover optimizes at all of its own nodes. Opponent steps are, in order
// of precedence: known data from ctx.known; fixed steps committed by an
// emulated opponent decision; the first step of an opponent decision taken
// inside the window (emulated as a zero-sum game over the opponent's own
// horizon, truncated to the mover's window); or a best response against the
// mover's utility.
Plan SolveDecision(const SolveContext& ctx, Player mover,
                   SolveStats* stats = nullptr);

}  // namespace jamgame

#endif  // JAMGAME_GAME_H_
