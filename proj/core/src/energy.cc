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

#include "jamgame/energy.h"

#include <cmath>
#include <string>

#include "jamgame/error.h"

namespace jamgame {
namespace {

void CheckBudgetLine(const EnergyParams& p, const char* who) {
  if (!std::isfinite(p.kappa) || !std::isfinite(p.rho) || !(p.rho > 0.0) ||
      p.kappa < p.rho) {
    throw InvalidInput(std::string(who) + " energy needs kappa >= rho > 0");
  }
}

}  // namespace

void ValidateAttackerParams(const EnergyParams& p, const CostModel& cm) {
  CheckBudgetLine(p, "attacker");
  if (cm.mode == AttackMode::kEdge) {
    if (!(p.beta_normal > 0.0) || !(p.beta_strong > p.beta_normal)) {
      throw InvalidInput(
          "attacker costs need beta_strong > beta_normal > 0");
    }
  } else {
    if (!(p.beta_node_normal > 0.0) ||
        !(p.beta_node_strong > p.beta_node_normal)) {
      throw InvalidInput(
          "node-attack costs need beta_node_strong > beta_node_normal > 0");
    }
  }
}

void ValidateDefenderParams(const EnergyParams& p) {
  CheckBudgetLine(p, "defender");
  if (!(p.beta_recover > 0.0)) {
    throw InvalidInput("defender needs beta_recover > 0");
  }
}

double BudgetAt(const EnergyParams& p, TimeStep k) {
  return p.kappa + p.rho * k;
}

double AttackCost(EdgeMask strong, EdgeMask normal, const EnergyParams& p) {
  if (!(strong & normal).Empty()) {
    throw InvalidAction("strong and normal attack sets overlap");
  }
  return p.beta_strong * strong.Count() + p.beta_normal * normal.Count();
}

double AttackCost(NodeMask strong, NodeMask normal, const EnergyParams& p) {
  if (!(strong & normal).Empty()) {
    throw InvalidAction("strong and normal node sets overlap");
  }
  return p.beta_node_strong * strong.Count() +
         p.beta_node_normal * normal.Count();
}

DefenseCharge DefenseCost(EdgeMask recover, EdgeMask attacked_normal,
                          WastePolicy waste, const EnergyParams& p) {
  const int hits = (recover & attacked_normal).Count();
  if (waste == WastePolicy::kFree) return {p.beta_recover * hits, 0.0};
  return {p.beta_recover * recover.Count(),
          p.beta_recover * (recover.Count() - hits)};
}

void EnergyLedger::Commit(double cost, double waste, TimeStep k) {
  if (cost < 0.0 || waste < 0.0 || waste > cost + kEnergyEps) {
    throw InternalError("invalid charge: cost " + std::to_string(cost) +
                        ", waste " + std::to_string(waste));
  }
  if (!CanAfford(cost, k)) {
    throw InternalError("budget overdraft at k=" + std::to_string(k) +
                        ": spent " + std::to_string(spent_ + cost) +
                        " > budget " + std::to_string(BudgetAt(params_, k)));
  }
  spent_ += cost;
  wasted_ += waste;
}

bool FeasiblePlan(const EnergyLedger& ledger,
                  std::span<const double> per_step_costs, TimeStep k_start) {
  double spent = ledger.spent();
  TimeStep k = k_start;
  for (double c : per_step_costs) {
    spent += c;
    if (spent > BudgetAt(ledger.params(), k) + kEnergyEps) return false;
    ++k;
  }
  return true;
}

bool CanSustain(const EnergyParams& p, double spent, double per_step_cost,
                TimeStep k_start, int steps) {
  for (int m = 1; m <= steps; ++m) {
    spent += per_step_cost;
    if (spent > BudgetAt(p, k_start + m - 1) + kEnergyEps) return false;
  }
  return true;
}

}  // namespace jamgame
