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

#ifndef JAMGAME_ENERGY_H_
#define JAMGAME_ENERGY_H_

#include <span>

#include "jamgame/graph.h"

namespace jamgame {

using TimeStep = int;

// Absolute slack used for every budget comparison. Scenario costs are small
// multiples of 0.5, so this only guards against accumulated rounding.
inline constexpr double kEnergyEps = 1e-9;

// Budget line kappa + rho*k plus per-unit costs. The attacker uses the
// normal/strong rates (edge or node level), the defender uses beta_recover.
struct EnergyParams {
  double kappa = 0.0;
  double rho = 0.0;
  double beta_normal = 0.0;
  double beta_strong = 0.0;
  double beta_recover = 0.0;
  double beta_node_normal = 0.0;
  double beta_node_strong = 0.0;

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

enum class AttackMode { kEdge, kNode };
enum class WastePolicy { kCharged, kFree };

struct CostModel {
  AttackMode mode = AttackMode::kEdge;
  // kCharged: the defender pays for its whole recovery set.
  // kFree: it pays only for recoveries that hit normally attacked edges.
  WastePolicy waste = WastePolicy::kCharged;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

// Throw InvalidInput when the role-specific invariants fail:
// kappa >= rho > 0, positive costs, strong strictly dearer than normal.
void ValidateAttackerParams(const EnergyParams& p, const CostModel& cm);
void ValidateDefenderParams(const EnergyParams& p);

double BudgetAt(const EnergyParams& p, TimeStep k);

// Edge-mode attack cost. Throws InvalidAction on overlap.
double AttackCost(EdgeMask strong, EdgeMask normal, const EnergyParams& p);
// Node-mode attack cost over attacked agents.
double AttackCost(NodeMask strong, NodeMask normal, const EnergyParams& p);

struct DefenseCharge {
  double cost = 0.0;
  double waste = 0.0;
};

DefenseCharge DefenseCost(EdgeMask recover, EdgeMask attacked_normal,
                          WastePolicy waste, const EnergyParams& p);

// Cumulative spend against the budget line of one player.
class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(EnergyParams params) : params_(params) {}
  EnergyLedger(EnergyParams params, double spent, double wasted)
      : params_(params), spent_(spent), wasted_(wasted) {}

  const EnergyParams& params() const { return params_; }
  double spent() const { return spent_; }
  double wasted() const { return wasted_; }

  bool CanAfford(double cost, TimeStep k) const {
    return spent_ + cost <= BudgetAt(params_, k) + kEnergyEps;
  }
  // Records the step-k charge. Throws InternalError if the budget line
  // would be crossed or waste exceeds cost.
  void Commit(double cost, double waste, TimeStep k);

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;

 private:
  EnergyParams params_;
  double spent_ = 0.0;
  double wasted_ = 0.0;
};

// True iff every prefix of `per_step_costs`, applied from k_start on, stays
// under the budget line.
bool FeasiblePlan(const EnergyLedger& ledger,
                  std::span<const double> per_step_costs, TimeStep k_start);

// True iff paying `per_step_cost` at each of `steps` consecutive steps from
// k_start is feasible for a player that has spent `spent` so far.
bool CanSustain(const EnergyParams& p, double spent, double per_step_cost,
                TimeStep k_start, int steps);

}  // namespace jamgame

#endif  // JAMGAME_ENERGY_H_
