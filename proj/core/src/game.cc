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

#include "jamgame/game.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "jamgame/error.h"

namespace jamgame {
namespace {

constexpr double kValueTol = 1e-9;

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <= kValueTol * std::max(1.0, std::abs(b));
}

int IntPow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Opponent steps fixed by an emulated decision: fixed[i] covers start + i.
struct PendingSteps {
  TimeStep start = 0;
  std::vector<AttackAction> attacks;
  std::vector<DefenseAction> defenses;
};

struct Node {
  TimeStep t = 0;
  StateVector x;
  double spent_a = 0.0;
  double spent_d = 0.0;
  PendingSteps pending;
};

template <typename A>
struct Choice {
  A action;
  double value = 0.0;
};

class Solver {
 public:
  Solver(const SolveContext& ctx, Player owner, SolveStats* stats)
      : ctx_(ctx),
        spec_(ctx.spec),
        owner_(owner),
        end_(ctx.time + ctx.spec.horizons.of(owner)),
        stats_(stats) {}

  Plan Solve() {
    Plan plan;
    plan.owner = owner_;
    plan.decision_index = ctx_.decision_index;
    plan.start_time = ctx_.time;
    Node n{ctx_.time, ctx_.state, ctx_.attacker_ledger.spent(),
           ctx_.defender_ledger.spent(), {}};
    double w = 0.0;
    bool first = true;
    while (n.t < end_) {
      Node after = n;
      Choice<AttackAction> ca = ChooseAttackOwner(n, &after);
      Node next;
      Choice<DefenseAction> cd = ChooseDefendOwner(after, ca.action, &next);
      if (first) {
        w = ca.value;
        first = false;
      }
      plan.path.push_back({ca.action, cd.action});
      n = std::move(next);
    }
    plan.value = owner_ == Player::kAttacker ? w : -w;
    return plan;
  }

 private:
  Node Advance(const Node& n, const AttackAction& a, const DefenseAction& d,
               double* payoff) {
    if (stats_ != nullptr) ++stats_->nodes;
    StepOutcome out = ResolveStep(spec_, n.x, a, d);
    *payoff = out.payoff;
    return Node{n.t + 1, std::move(out.x_next), n.spent_a + out.attack_cost,
                n.spent_d + out.defense.cost, n.pending};
  }

  // ---- plain zero-sum window game, everyone contingent ----

  Choice<AttackAction> ChooseAttackPlain(const Node& n, TimeStep end) {
    std::vector<AttackAction> options = EnumerateAttacks(spec_, n.spent_a, n.t);
    std::vector<double> values;
    values.reserve(options.size());
    for (const AttackAction& a : options) {
      values.push_back(ChooseDefendPlain(n, a, end, nullptr).value);
    }
    int i = SelectAttack(options, values, spec_,
                         Abundant(spec_, Player::kAttacker, n.spent_a, n.t, end));
    return {options[i], values[i]};
  }

  Choice<DefenseAction> ChooseDefendPlain(const Node& n, const AttackAction& a,
                                          TimeStep end, Node* child_out) {
    std::vector<DefenseAction> options =
        EnumerateDefenses(spec_, n.spent_d, a.normal, n.t);
    std::vector<double> values;
    values.reserve(options.size());
    for (const DefenseAction& d : options) {
      double payoff = 0.0;
      Node child = Advance(n, a, d, &payoff);
      values.push_back(payoff + PlainValue(child, end));
    }
    int i = SelectDefense(
        options, values,
        Abundant(spec_, Player::kDefender, n.spent_d, n.t, end));
    if (child_out != nullptr) {
      double payoff = 0.0;
      *child_out = Advance(n, a, options[i], &payoff);
    }
    return {options[i], values[i]};
  }

  double PlainValue(const Node& n, TimeStep end) {
    if (n.t >= end) return 0.0;
    return ChooseAttackPlain(n, end).value;
  }

  // ---- owner model ----

  // Opponent action at time t if it is data (known or pending).
  std::optional<AttackAction> FixedAttack(const Node& n) const {
    if (auto it = ctx_.known.attacks.find(n.t); it != ctx_.known.attacks.end()) {
      return it->second;
    }
    int i = n.t - n.pending.start;
    if (i >= 0 && i < static_cast<int>(n.pending.attacks.size())) {
      return n.pending.attacks[i];
    }
    return std::nullopt;
  }

  std::optional<DefenseAction> FixedDefense(const Node& n) const {
    if (auto it = ctx_.known.defenses.find(n.t);
        it != ctx_.known.defenses.end()) {
      return it->second;
    }
    int i = n.t - n.pending.start;
    if (i >= 0 && i < static_cast<int>(n.pending.defenses.size())) {
      return n.pending.defenses[i];
    }
    return std::nullopt;
  }

  // Emulated iff t starts an opponent decision inside the window. A
  // defender owner has already seen the attacker's decision at its own
  // decision time, so that one is not re-emulated.
  bool EmulatedDecision(Player p, TimeStep t) const {
    if (p == owner_) return false;
    if (t % spec_.periods.of(p) != 0 || t < ctx_.time) return false;
    return !(owner_ == Player::kDefender && t == ctx_.time);
  }

  TimeStep SubEnd(Player p, TimeStep t) const {
    return std::min(t + spec_.horizons.of(p), end_);
  }

  // Last step covered by the committed prefix of an opponent decision at t.
  TimeStep CommitEnd(Player p, TimeStep t) const {
    return std::min(t + spec_.periods.of(p), end_);
  }

  Choice<AttackAction> ChooseAttackOwner(const Node& n, Node* after) {
    *after = n;
    if (owner_ == Player::kDefender) {
      if (auto fixed = FixedAttack(n)) {
        if (AttackActionCost(spec_, *fixed) >
            BudgetAt(spec_.attacker_energy, n.t) - n.spent_a + kEnergyEps) {
          throw InternalError("committed attack exceeds the attacker budget");
        }
        return {*fixed, ChooseDefendOwner(n, *fixed, nullptr).value};
      }
      if (EmulatedDecision(Player::kAttacker, n.t)) {
        return EmulateAttacker(n, after);
      }
    }
    std::vector<AttackAction> options = EnumerateAttacks(spec_, n.spent_a, n.t);
    std::vector<double> values;
    values.reserve(options.size());
    for (const AttackAction& a : options) {
      values.push_back(ChooseDefendOwner(n, a, nullptr).value);
    }
    int i = SelectAttack(
        options, values, spec_,
        Abundant(spec_, Player::kAttacker, n.spent_a, n.t, end_));
    return {options[i], values[i]};
  }

  Choice<AttackAction> EmulateAttacker(const Node& n, Node* after) {
    if (stats_ != nullptr) ++stats_->submodels;
    const TimeStep sub_end = SubEnd(Player::kAttacker, n.t);
    Choice<AttackAction> first = ChooseAttackPlain(n, sub_end);
    // Walk the sub-model's equilibrium path to collect the steps the
    // emulated attacker commits to.
    PendingSteps pending;
    pending.start = n.t + 1;
    Node walk = n;
    AttackAction a = first.action;
    for (TimeStep s = n.t; s < CommitEnd(Player::kAttacker, n.t); ++s) {
      if (s > n.t) {
        a = ChooseAttackPlain(walk, sub_end).action;
        pending.attacks.push_back(a);
      }
      if (s + 1 < CommitEnd(Player::kAttacker, n.t)) {
        Node child;
        ChooseDefendPlain(walk, a, sub_end, &child);
        walk = std::move(child);
      }
    }
    after->pending = std::move(pending);
    return {first.action, ChooseDefendOwner(*after, first.action, nullptr).value};
  }

  Choice<DefenseAction> ChooseDefendOwner(const Node& n, const AttackAction& a,
                                          Node* child_out) {
    if (owner_ == Player::kAttacker) {
      if (auto fixed = FixedDefense(n)) {
        DefenseAction d = ClipRecovery(spec_, *fixed, a.normal, n.spent_d, n.t);
        return Finish(n, a, d, child_out);
      }
      if (EmulatedDecision(Player::kDefender, n.t)) {
        return EmulateDefender(n, a, child_out);
      }
    }
    std::vector<DefenseAction> options =
        EnumerateDefenses(spec_, n.spent_d, a.normal, n.t);
    std::vector<double> values;
    values.reserve(options.size());
    for (const DefenseAction& d : options) {
      values.push_back(Finish(n, a, d, nullptr).value);
    }
    int i = SelectDefense(
        options, values,
        Abundant(spec_, Player::kDefender, n.spent_d, n.t, end_));
    if (child_out != nullptr) return Finish(n, a, options[i], child_out);
    return {options[i], values[i]};
  }

  Choice<DefenseAction> EmulateDefender(const Node& n, const AttackAction& a,
                                        Node* child_out) {
    if (stats_ != nullptr) ++stats_->submodels;
    const TimeStep sub_end = SubEnd(Player::kDefender, n.t);
    Node walk;
    Choice<DefenseAction> first = ChooseDefendPlain(n, a, sub_end, &walk);
    PendingSteps pending;
    pending.start = n.t + 1;
    for (TimeStep s = n.t + 1; s < CommitEnd(Player::kDefender, n.t); ++s) {
      AttackAction as = ChooseAttackPlain(walk, sub_end).action;
      Node child;
      DefenseAction ds = ChooseDefendPlain(walk, as, sub_end, &child).action;
      pending.defenses.push_back(ds);
      walk = std::move(child);
    }
    Node with_pending = n;
    with_pending.pending = std::move(pending);
    return Finish(with_pending, a, first.action, child_out);
  }

  // Applies (a, d) and continues in the owner model.
  Choice<DefenseAction> Finish(const Node& n, const AttackAction& a,
                               const DefenseAction& d, Node* child_out) {
    double payoff = 0.0;
    Node child = Advance(n, a, d, &payoff);
    double w = payoff + OwnerValue(child);
    if (child_out != nullptr) *child_out = std::move(child);
    return {d, w};
  }

  double OwnerValue(const Node& n) {
    if (n.t >= end_) return 0.0;
    Node after;
    return ChooseAttackOwner(n, &after).value;
  }

  const SolveContext& ctx_;
  const GameSpec& spec_;
  Player owner_;
  TimeStep end_;
  SolveStats* stats_;
};

}  // namespace

std::string PlayerName(Player p) {
  return p == Player::kAttacker ? "attacker" : "defender";
}

void ValidateGameSpec(const GameSpec& spec) {
  if (spec.weights.size() != spec.graph.num_agents()) {
    throw InvalidInput("consensus weights do not match the graph");
  }
  ValidateAttackerParams(spec.attacker_energy, spec.cost_model);
  ValidateDefenderParams(spec.defender_energy);
  const UtilityWeights& u = spec.utility;
  if (!std::isfinite(u.a) || !std::isfinite(u.b) || u.a < 0.0 || u.b < 0.0 ||
      (u.a == 0.0 && u.b == 0.0)) {
    throw InvalidInput("utility weights need a, b >= 0, not both zero");
  }
  for (Player p : {Player::kAttacker, Player::kDefender}) {
    if (spec.horizons.of(p) < 1 || spec.periods.of(p) < 1) {
      throw InvalidInput(PlayerName(p) + " horizon and period must be >= 1");
    }
    if (spec.periods.of(p) > spec.horizons.of(p)) {
      throw InvalidInput(PlayerName(p) +
                         " game period must not exceed its horizon");
    }
  }
}

bool SamePlan(const Plan& a, const Plan& b) {
  return a.owner == b.owner && a.decision_index == b.decision_index &&
         a.start_time == b.start_time && a.path == b.path &&
         NearlyEqual(a.value, b.value);
}

AttackAction NodeAttack(const Graph& g, NodeMask strong, NodeMask normal) {
  if (!(strong & normal).Empty()) {
    throw InvalidAction("strong and normal node sets overlap");
  }
  if (!(strong | normal).IsSubsetOf(g.AllNodes())) {
    throw InvalidAction("node attack references unknown agents");
  }
  AttackAction a;
  a.strong_nodes = strong;
  a.normal_nodes = normal;
  a.strong = g.IncidentEdges(strong);
  a.normal = g.IncidentEdges(normal).Without(a.strong);
  return a;
}

double AttackActionCost(const GameSpec& spec, const AttackAction& a) {
  if (spec.cost_model.mode == AttackMode::kNode) {
    return AttackCost(a.strong_nodes, a.normal_nodes, spec.attacker_energy);
  }
  return AttackCost(a.strong, a.normal, spec.attacker_energy);
}

std::vector<AttackAction> EnumerateAttacks(const GameSpec& spec, double spent,
                                           TimeStep t) {
  const bool node_mode = spec.cost_model.mode == AttackMode::kNode;
  const int units =
      node_mode ? spec.graph.num_agents() : spec.graph.num_edges();
  const double room = BudgetAt(spec.attacker_energy, t) - spent + kEnergyEps;
  const int total = IntPow(3, units);
  std::vector<AttackAction> out;
  for (int code = 0; code < total; ++code) {
    std::uint32_t strong = 0;
    std::uint32_t normal = 0;
    for (int i = 0, c = code; i < units; ++i, c /= 3) {
      if (c % 3 == 1) normal |= 1u << i;
      if (c % 3 == 2) strong |= 1u << i;
    }
    AttackAction a;
    if (node_mode) {
      a = NodeAttack(spec.graph, NodeMask{strong}, NodeMask{normal});
    } else {
      a.strong = EdgeMask{strong};
      a.normal = EdgeMask{normal};
    }
    if (AttackActionCost(spec, a) <= room) out.push_back(a);
  }
  return out;
}

std::vector<DefenseAction> EnumerateDefenses(const GameSpec& spec,
                                             double spent,
                                             EdgeMask attacked_normal,
                                             TimeStep t) {
  const double room = BudgetAt(spec.defender_energy, t) - spent + kEnergyEps;
  const std::uint32_t total = std::uint32_t{1} << spec.graph.num_edges();
  std::vector<DefenseAction> out;
  for (std::uint32_t bits = 0; bits < total; ++bits) {
    DefenseAction d{EdgeMask{bits}};
    double cost = DefenseCost(d.recover, attacked_normal,
                              spec.cost_model.waste, spec.defender_energy)
                      .cost;
    if (cost <= room) out.push_back(d);
  }
  return out;
}

double StepPayoff(const StateVector& x_next, const Graph& base,
                  EdgeMask resolved, const UtilityWeights& w) {
  double payoff = w.a * StateDifference(x_next);
  if (w.b != 0.0) {
    payoff -= w.b * static_cast<double>(AgentGroupIndex(base, resolved));
  }
  return payoff;
}

double StepPayoff(const StateVector& x_next, const Graph& resolved,
                  const UtilityWeights& w) {
  return StepPayoff(x_next, resolved, resolved.AllEdges(), w);
}

StepOutcome ResolveStep(const GameSpec& spec, const StateVector& x,
                        const AttackAction& a, const DefenseAction& d) {
  StepOutcome out;
  out.effective_recovery = d.recover & a.normal;
  out.resolved = ResolveEdges(spec.graph.AllEdges(), a.strong, a.normal,
                              d.recover);
  out.x_next = ConsensusStep(x, spec.graph, out.resolved, spec.weights);
  out.payoff = StepPayoff(out.x_next, spec.graph, out.resolved, spec.utility);
  out.attack_cost = AttackActionCost(spec, a);
  out.defense = DefenseCost(d.recover, a.normal, spec.cost_model.waste,
                            spec.defender_energy);
  return out;
}

DefenseAction ClipRecovery(const GameSpec& spec, DefenseAction d,
                           EdgeMask attacked_normal, double spent,
                           TimeStep t) {
  const double room = BudgetAt(spec.defender_energy, t) - spent + kEnergyEps;
  while (DefenseCost(d.recover, attacked_normal, spec.cost_model.waste,
                     spec.defender_energy)
             .cost > room) {
    int top = 31 - std::countl_zero(d.recover.bits);
    d.recover = d.recover.Without(EdgeMask::Bit(top));
  }
  return d;
}

bool Abundant(const GameSpec& spec, Player p, double spent, TimeStep t,
              TimeStep window_end) {
  double full = 0.0;
  if (p == Player::kDefender) {
    full = spec.defender_energy.beta_recover * spec.graph.num_edges();
  } else if (spec.cost_model.mode == AttackMode::kNode) {
    full = spec.attacker_energy.beta_node_normal * spec.graph.num_agents();
  } else {
    full = spec.attacker_energy.beta_normal * spec.graph.num_edges();
  }
  return CanSustain(spec.energy(p), spent, full, t, window_end - t);
}

int TieBreakAttack(std::span<const AttackAction> candidates,
                   const GameSpec& spec, bool abundant) {
  if (candidates.empty()) throw InternalError("empty attack tie-break");
  const bool node_mode = spec.cost_model.mode == AttackMode::kNode;
  auto units = [&](const AttackAction& a) {
    return node_mode ? (a.strong_nodes | a.normal_nodes).Count()
                     : (a.strong | a.normal).Count();
  };
  auto better = [&](const AttackAction& x, const AttackAction& y) {
    int ux = units(x), uy = units(y);
    if (ux != uy) return abundant ? ux > uy : ux < uy;
    double cx = AttackActionCost(spec, x), cy = AttackActionCost(spec, y);
    if (cx != cy) return abundant ? cx > cy : cx < cy;
    if (node_mode) {
      if (x.strong_nodes != y.strong_nodes) {
        return LexLess(x.strong_nodes, y.strong_nodes);
      }
      return LexLess(x.normal_nodes, y.normal_nodes);
    }
    if (x.strong != y.strong) return LexLess(x.strong, y.strong);
    return LexLess(x.normal, y.normal);
  };
  int best = 0;
  for (int i = 1; i < static_cast<int>(candidates.size()); ++i) {
    if (better(candidates[i], candidates[best])) best = i;
  }
  return best;
}

int TieBreakDefense(std::span<const DefenseAction> candidates, bool abundant) {
  if (candidates.empty()) throw InternalError("empty defense tie-break");
  auto better = [&](const DefenseAction& x, const DefenseAction& y) {
    int cx = x.recover.Count(), cy = y.recover.Count();
    if (cx != cy) return abundant ? cx > cy : cx < cy;
    return LexLess(x.recover, y.recover);
  };
  int best = 0;
  for (int i = 1; i < static_cast<int>(candidates.size()); ++i) {
    if (better(candidates[i], candidates[best])) best = i;
  }
  return best;
}

int SelectAttack(std::span<const AttackAction> options,
                 std::span<const double> values, const GameSpec& spec,
                 bool abundant) {
  if (options.empty() || options.size() != values.size()) {
    throw InternalError("attack selection over mismatched candidates");
  }
  double best = *std::max_element(values.begin(), values.end());
  std::vector<AttackAction> tied;
  std::vector<int> index;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (NearlyEqual(values[i], best)) {
      tied.push_back(options[i]);
      index.push_back(static_cast<int>(i));
    }
  }
  return index[TieBreakAttack(tied, spec, abundant)];
}

int SelectDefense(std::span<const DefenseAction> options,
                  std::span<const double> values, bool abundant) {
  if (options.empty() || options.size() != values.size()) {
    throw InternalError("defense selection over mismatched candidates");
  }
  double best = *std::min_element(values.begin(), values.end());
  std::vector<DefenseAction> tied;
  std::vector<int> index;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (NearlyEqual(values[i], best)) {
      tied.push_back(options[i]);
      index.push_back(static_cast<int>(i));
    }
  }
  return index[TieBreakDefense(tied, abundant)];
}

Plan SolveDecision(const SolveContext& ctx, Player mover, SolveStats* stats) {
  if (static_cast<int>(ctx.state.size()) != ctx.spec.graph.num_agents()) {
    throw InvalidInput("state length does not match the agent count");
  }
  return Solver(ctx, mover, stats).Solve();
}

}  // namespace jamgame
