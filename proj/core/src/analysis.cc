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

#include "jamgame/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jamgame/error.h"

namespace jamgame {
namespace {

int Floor(double r) { return static_cast<int>(std::floor(r + 1e-12)); }

// ---- explicit game tree for the oracle ----

struct TreeNode {
  int parent = -1;
  bool attacker_turn = true;  // attacker to move at time t
  TimeStep t = 0;
  StateVector x;
  double spent_a = 0.0;
  double spent_d = 0.0;
  AttackAction attack;    // defender nodes: the attack just played
  DefenseAction defense;  // attacker nodes: the defense that led here
  double payoff = 0.0;    // attacker nodes: payoff of the step that led here
  std::vector<int> children;
};

struct Pending {
  TimeStep start = 0;
  std::vector<AttackAction> attacks;
  std::vector<DefenseAction> defenses;
};

class Oracle {
 public:
  Oracle(const SolveContext& ctx, Player owner, long long max_nodes)
      : ctx_(ctx),
        spec_(ctx.spec),
        owner_(owner),
        t0_(ctx.time),
        end_(ctx.time + ctx.spec.horizons.of(owner)),
        max_nodes_(max_nodes) {}

  Plan Solve() {
    Build();
    Plan plan;
    plan.owner = owner_;
    plan.decision_index = ctx_.decision_index;
    plan.start_time = t0_;
    Evaluate();
    int cur = 0;
    while (nodes_[cur].t < end_) {
      int d_node = chosen_[cur];
      int next = chosen_[d_node];
      plan.path.push_back({nodes_[d_node].attack, nodes_[next].defense});
      cur = next;
    }
    plan.value = owner_ == Player::kAttacker ? value_[0] : -value_[0];
    return plan;
  }

 private:
  void Build() {
    TreeNode root;
    root.t = t0_;
    root.x = ctx_.state;
    root.spent_a = ctx_.attacker_ledger.spent();
    root.spent_d = ctx_.defender_ledger.spent();
    nodes_.push_back(std::move(root));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].attacker_turn && nodes_[i].t >= end_) continue;
      std::vector<TreeNode> kids;
      const TreeNode& n = nodes_[i];
      if (n.attacker_turn) {
        for (const AttackAction& a : EnumerateAttacks(spec_, n.spent_a, n.t)) {
          TreeNode c;
          c.attacker_turn = false;
          c.t = n.t;
          c.x = n.x;
          c.spent_a = n.spent_a;
          c.spent_d = n.spent_d;
          c.attack = a;
          kids.push_back(std::move(c));
        }
      } else {
        for (const DefenseAction& d :
             EnumerateDefenses(spec_, n.spent_d, n.attack.normal, n.t)) {
          StepOutcome out = ResolveStep(spec_, n.x, n.attack, d);
          TreeNode c;
          c.t = n.t + 1;
          c.x = std::move(out.x_next);
          c.spent_a = n.spent_a + out.attack_cost;
          c.spent_d = n.spent_d + out.defense.cost;
          c.defense = d;
          c.payoff = out.payoff;
          kids.push_back(std::move(c));
        }
      }
      for (TreeNode& c : kids) {
        if (static_cast<long long>(nodes_.size()) >= max_nodes_) {
          throw WorkBoundExceeded("oracle tree exceeds " +
                                  std::to_string(max_nodes_) + " nodes");
        }
        c.parent = static_cast<int>(i);
        nodes_[i].children.push_back(static_cast<int>(nodes_.size()));
        nodes_.push_back(std::move(c));
      }
    }
  }

  // Plain zero-sum values of every node for games ending at window_end,
  // with the chosen child of each decision node. Children follow their
  // parent in `nodes_`, so one reverse sweep suffices.
  struct PlainTable {
    std::vector<double> value;
    std::vector<int> choice;
  };

  const PlainTable& Plain(TimeStep window_end) {
    auto it = plain_.find(window_end);
    if (it != plain_.end()) return it->second;
    PlainTable table;
    table.value.assign(nodes_.size(), 0.0);
    table.choice.assign(nodes_.size(), -1);
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
      const TreeNode& n = nodes_[i];
      if (n.t >= window_end) continue;
      std::vector<double> values;
      if (n.attacker_turn) {
        std::vector<AttackAction> options;
        for (int c : n.children) {
          options.push_back(nodes_[c].attack);
          values.push_back(table.value[c]);
        }
        int k = SelectAttack(
            options, values, spec_,
            Abundant(spec_, Player::kAttacker, n.spent_a, n.t, window_end));
        table.choice[i] = n.children[k];
        table.value[i] = values[k];
      } else {
        std::vector<DefenseAction> options;
        for (int c : n.children) {
          options.push_back(nodes_[c].defense);
          values.push_back(nodes_[c].payoff + table.value[c]);
        }
        int k = SelectDefense(
            options, values,
            Abundant(spec_, Player::kDefender, n.spent_d, n.t, window_end));
        table.choice[i] = n.children[k];
        table.value[i] = values[k];
      }
    }
    return plain_.emplace(window_end, std::move(table)).first->second;
  }

  int ChildWithAttack(int i, const AttackAction& a) const {
    for (int c : nodes_[i].children) {
      if (nodes_[c].attack == a) return c;
    }
    throw InternalError("committed attack is not a feasible action");
  }

  int ChildWithDefense(int i, const DefenseAction& d) const {
    for (int c : nodes_[i].children) {
      if (nodes_[c].defense == d) return c;
    }
    throw InternalError("committed recovery is not a feasible action");
  }

  bool Emulated(Player p, TimeStep t) const {
    if (p == owner_ || t % spec_.periods.of(p) != 0 || t < t0_) return false;
    return !(owner_ == Player::kDefender && t == t0_);
  }

  // Top-down: fixes each node's admissible children and the pending
  // opponent commitments it passes on.
  void Restrict() {
    allowed_.assign(nodes_.size(), {});
    std::vector<Pending> pending(nodes_.size());
    std::vector<bool> reached(nodes_.size(), false);
    reached[0] = true;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!reached[i]) continue;
      const TreeNode& n = nodes_[i];
      if (n.attacker_turn && n.t >= end_) continue;
      Pending pass = pending[i];
      std::vector<int>& allow = allowed_[i];
      const int slot = n.t - pending[i].start;
      if (n.attacker_turn && owner_ == Player::kDefender) {
        auto known = ctx_.known.attacks.find(n.t);
        if (known != ctx_.known.attacks.end()) {
          allow.push_back(ChildWithAttack(i, known->second));
        } else if (slot >= 0 &&
                   slot < static_cast<int>(pending[i].attacks.size())) {
          allow.push_back(ChildWithAttack(i, pending[i].attacks[slot]));
        } else if (Emulated(Player::kAttacker, n.t)) {
          const TimeStep sub_end = std::min(n.t + spec_.horizons.attacker, end_);
          const TimeStep commit_end =
              std::min(n.t + spec_.periods.attacker, end_);
          const PlainTable& plain = Plain(sub_end);
          int first = plain.choice[i];
          allow.push_back(first);
          pass = Pending{n.t + 1, {}, {}};
          int cur = first;
          for (TimeStep s = n.t + 1; s < commit_end; ++s) {
            cur = plain.choice[cur];  // attacker node at s
            cur = plain.choice[cur];  // defender node after the attack at s
            pass.attacks.push_back(nodes_[cur].attack);
          }
        }
      } else if (!n.attacker_turn && owner_ == Player::kAttacker) {
        auto known = ctx_.known.defenses.find(n.t);
        if (known != ctx_.known.defenses.end() ||
            (slot >= 0 && slot < static_cast<int>(pending[i].defenses.size()))) {
          DefenseAction d = known != ctx_.known.defenses.end()
                                ? known->second
                                : pending[i].defenses[slot];
          d = ClipRecovery(spec_, d, n.attack.normal, n.spent_d, n.t);
          allow.push_back(ChildWithDefense(i, d));
        } else if (Emulated(Player::kDefender, n.t)) {
          const TimeStep sub_end = std::min(n.t + spec_.horizons.defender, end_);
          const TimeStep commit_end =
              std::min(n.t + spec_.periods.defender, end_);
          const PlainTable& plain = Plain(sub_end);
          int first = plain.choice[i];
          allow.push_back(first);
          pass = Pending{n.t + 1, {}, {}};
          int cur = first;
          for (TimeStep s = n.t + 1; s < commit_end; ++s) {
            cur = plain.choice[cur];  // defender node at s
            cur = plain.choice[cur];  // attacker node at s + 1
            pass.defenses.push_back(nodes_[cur].defense);
          }
        }
      }
      if (allow.empty()) allow = n.children;
      for (int c : allow) {
        reached[c] = true;
        pending[c] = pass;
      }
    }
    reached_ = std::move(reached);
  }

  void Evaluate() {
    Restrict();
    value_.assign(nodes_.size(), 0.0);
    chosen_.assign(nodes_.size(), -1);
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
      if (!reached_[i]) continue;
      const TreeNode& n = nodes_[i];
      if (n.attacker_turn && n.t >= end_) continue;
      const std::vector<int>& allow = allowed_[i];
      std::vector<double> values;
      if (n.attacker_turn) {
        std::vector<AttackAction> options;
        for (int c : allow) {
          options.push_back(nodes_[c].attack);
          values.push_back(value_[c]);
        }
        int k = SelectAttack(
            options, values, spec_,
            Abundant(spec_, Player::kAttacker, n.spent_a, n.t, end_));
        chosen_[i] = allow[k];
        value_[i] = values[k];
      } else {
        std::vector<DefenseAction> options;
        for (int c : allow) {
          options.push_back(nodes_[c].defense);
          values.push_back(nodes_[c].payoff + value_[c]);
        }
        int k = SelectDefense(
            options, values,
            Abundant(spec_, Player::kDefender, n.spent_d, n.t, end_));
        chosen_[i] = allow[k];
        value_[i] = values[k];
      }
    }
  }

  const SolveContext& ctx_;
  const GameSpec& spec_;
  Player owner_;
  TimeStep t0_;
  TimeStep end_;
  long long max_nodes_;
  std::vector<TreeNode> nodes_;
  std::map<TimeStep, PlainTable> plain_;
  std::vector<std::vector<int>> allowed_;
  std::vector<bool> reached_;
  std::vector<double> value_;
  std::vector<int> chosen_;
};

}  // namespace

std::vector<int> ThetaVector(const Graph& g, AttackMode mode) {
  const int n = g.num_agents();
  const int m = g.num_edges();
  const int units = mode == AttackMode::kNode ? n : m;
  if (units > kMaxThetaUnits) {
    throw WorkBoundExceeded("theta enumeration over " + std::to_string(units) +
                            " units exceeds the limit of " +
                            std::to_string(kMaxThetaUnits));
  }
  std::vector<int> theta(units, 0);
  const std::uint32_t total = std::uint32_t{1} << units;
  for (std::uint32_t bits = 1; bits < total; ++bits) {
    const int size = std::popcount(bits);
    int groups = 0;
    if (mode == AttackMode::kEdge) {
      groups = GroupCount(g, g.AllEdges().Without(EdgeMask{bits}));
    } else {
      NodeMask removed{bits};
      Partition p = Components(g, g.AllEdges().Without(g.IncidentEdges(removed)));
      // Removed agents are isolated singletons and do not count.
      for (const auto& group : p.groups) {
        if (!removed.Contains(group.front() - 1)) ++groups;
      }
    }
    theta[size - 1] = std::max(theta[size - 1], groups);
  }
  return theta;
}

ConditionReport CheckConditions(const GameSpec& spec) {
  const EnergyParams& a = spec.attacker_energy;
  ConditionReport r;
  r.num_agents = spec.graph.num_agents();
  r.num_edges = spec.graph.num_edges();
  r.edge_connectivity = EdgeConnectivity(spec.graph);
  const double lambda = r.edge_connectivity;
  r.ratio_normal = a.beta_normal > 0.0 ? a.rho / a.beta_normal : 0.0;
  r.ratio_strong = a.beta_strong > 0.0 ? a.rho / a.beta_strong : 0.0;
  r.necessary_normal = r.ratio_normal >= lambda;
  r.necessary_strong = r.ratio_strong >= lambda;
  const bool b_zero = spec.utility.b == 0.0;
  const int lcm = std::lcm(spec.periods.attacker, spec.periods.defender);
  r.case_a = b_zero && spec.horizons.defender >= spec.horizons.attacker &&
             lcm == spec.periods.attacker;
  r.case_b = b_zero && spec.periods.defender == 1;
  r.tighter_applicable = r.case_a || r.case_b;
  r.sufficient_full_split = r.ratio_strong >= r.num_edges;
  r.tighter_in_force = spec.cost_model.waste == WastePolicy::kFree
                           ? b_zero
                           : r.tighter_applicable;
  r.necessary_in_force =
      r.tighter_in_force ? r.necessary_strong : r.necessary_normal;
  if (a.beta_node_normal > 0.0) r.ratio_node_normal = a.rho / a.beta_node_normal;
  if (a.beta_node_strong > 0.0) r.ratio_node_strong = a.rho / a.beta_node_strong;
  r.node_necessary_normal = r.ratio_node_normal >= 1.0;
  r.node_necessary_strong = r.ratio_node_strong >= 1.0;
  return r;
}

ClusterBound ClusterUpperBound(const GameSpec& spec) {
  const ConditionReport r = CheckConditions(spec);
  const bool node_mode = spec.cost_model.mode == AttackMode::kNode;
  const int n = spec.graph.num_agents();
  const int units = node_mode ? n : spec.graph.num_edges();
  const double strong = node_mode ? r.ratio_node_strong : r.ratio_strong;
  const double normal = node_mode ? r.ratio_node_normal : r.ratio_normal;
  ClusterBound bound;
  if (strong >= units) {
    bound.value = n;
    bound.note = "attacker can strongly attack every unit at all times";
    return bound;
  }
  bound.theta_index =
      r.tighter_in_force ? Floor(strong) : std::min(units, Floor(normal));
  if (bound.theta_index == 0) {
    bound.value = 1;
    bound.note = "attacker cannot sustain a single attack";
    return bound;
  }
  std::vector<int> theta = ThetaVector(
      spec.graph, node_mode ? AttackMode::kNode : AttackMode::kEdge);
  bound.value = std::max(1, theta[bound.theta_index - 1]);
  bound.note = r.tighter_in_force ? "tighter condition in force"
                                  : "general condition";
  return bound;
}

Plan BruteForceEquilibrium(const SolveContext& ctx, Player mover,
                           long long max_nodes) {
  if (static_cast<int>(ctx.state.size()) != ctx.spec.graph.num_agents()) {
    throw InvalidInput("state length does not match the agent count");
  }
  return Oracle(ctx, mover, max_nodes).Solve();
}

std::string OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kConsensus:
      return "consensus";
    case Outcome::kClusters:
      return "clusters";
    case Outcome::kUndecided:
      return "undecided";
  }
  return "undecided";
}

Verdict ConsensusVerdict(const Trace& trace, const GameSpec& spec,
                         const VerdictOptions& opt) {
  Verdict v;
  v.clusters = DetectClusters(trace.final_state(), opt.cluster_tol);
  if (static_cast<int>(trace.steps.size()) < opt.convergence_window) {
    v.outcome = Outcome::kUndecided;
  } else {
    v.outcome = v.clusters.size() == 1 ? Outcome::kConsensus
                                       : Outcome::kClusters;
  }
  const int window =
      opt.union_window > 0
          ? opt.union_window
          : 4 * std::lcm(spec.periods.attacker, spec.periods.defender);
  const int len = static_cast<int>(trace.steps.size());
  if (len >= window) {
    v.union_connected = true;
    for (int s = 0; s + window <= len && v.union_connected; ++s) {
      EdgeMask u;
      for (int k = s; k < s + window; ++k) u |= trace.steps[k].resolved;
      v.union_connected = GroupCount(spec.graph, u) == 1;
    }
  }
  v.cross_check_ok = !v.union_connected || v.outcome != Outcome::kClusters;
  return v;
}

double EstimateLeaves(const GameSpec& spec) {
  const int units = spec.cost_model.mode == AttackMode::kNode
                        ? spec.graph.num_agents()
                        : spec.graph.num_edges();
  const double per_step =
      std::pow(3.0, units) * std::pow(2.0, spec.graph.num_edges());
  return std::pow(per_step,
                  std::max(spec.horizons.attacker, spec.horizons.defender));
}

std::vector<std::string> WorkBoundWarnings(const GameSpec& spec,
                                           const WorkBound& wb) {
  std::vector<std::string> out;
  if (spec.graph.num_edges() > wb.max_edges) {
    out.push_back("graph has " + std::to_string(spec.graph.num_edges()) +
                  " edges; exhaustive search is advised only up to " +
                  std::to_string(wb.max_edges));
  }
  const int h = std::max(spec.horizons.attacker, spec.horizons.defender);
  if (h > wb.max_horizon) {
    out.push_back("horizon " + std::to_string(h) +
                  " exceeds the advised maximum " +
                  std::to_string(wb.max_horizon));
  }
  return out;
}

void EnforceWorkBound(const GameSpec& spec, const WorkBound& wb) {
  const double leaves = EstimateLeaves(spec);
  if (leaves > wb.max_leaves) {
    throw WorkBoundExceeded("decision tree has about " +
                            std::to_string(static_cast<long long>(leaves)) +
                            " leaves; work bound is " +
                            std::to_string(static_cast<long long>(wb.max_leaves)));
  }
}

}  // namespace jamgame
