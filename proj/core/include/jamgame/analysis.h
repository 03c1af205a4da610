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

#ifndef JAMGAME_ANALYSIS_H_
#define JAMGAME_ANALYSIS_H_

#include <string>
#include <vector>

#include "jamgame/game.h"
#include "jamgame/graph.h"
#include "jamgame/rolling.h"

namespace jamgame {

// Subset enumeration is refused above this many edges (or agents).
inline constexpr int kMaxThetaUnits = 20;

// Edge mode: values[i-1] is the largest number of groups left after
// removing i edges. Node mode: the largest number of groups among the
// surviving agents after removing i agents with all their edges, so the last
// entry is 0. Throws WorkBoundExceeded beyond kMaxThetaUnits.
std::vector<int> ThetaVector(const Graph& g, AttackMode mode);

struct ConditionReport {
  int num_agents = 0;
  int num_edges = 0;
  int edge_connectivity = 0;
  double ratio_normal = 0.0;  // rho^A / beta^A
  double ratio_strong = 0.0;  // rho^A / beta-bar^A
  bool necessary_normal = false;
  bool necessary_strong = false;
  bool case_a = false;  // b = 0, h^D >= h^A, lcm(T^A, T^D) = T^A
  bool case_b = false;  // b = 0, T^D = 1
  bool tighter_applicable = false;
  bool sufficient_full_split = false;  // ratio_strong >= |E|
  // Necessary condition in force for this scenario's cost model. With free
  // waste the tighter form applies whenever b = 0.
  bool tighter_in_force = false;
  bool necessary_in_force = false;
  // Node-attack thresholds: isolating one agent suffices.
  double ratio_node_normal = 0.0;
  double ratio_node_strong = 0.0;
  bool node_necessary_normal = false;
  bool node_necessary_strong = false;
};

// Pure function of the configuration. Throws InvalidInput for n < 2.
ConditionReport CheckConditions(const GameSpec& spec);

struct ClusterBound {
  int value = 0;
  int theta_index = 0;  // 1-based; 0 when no Theta entry was used
  std::string note;

  friend bool operator==(const ClusterBound&, const ClusterBound&) = default;
};

// Upper bound on the cluster count at infinite time: n under the full-split
// condition; otherwise Theta at floor(rho/beta-bar) when the tighter
// condition is in force, else at min(units, floor(rho/beta)). Index 0 means
// the attacker cannot sustain a single attack and yields 1. Node mode uses
// Theta_V with the node rates.
ClusterBound ClusterUpperBound(const GameSpec& spec);

// Exhaustive oracle for SolveDecision: materializes every feasible joint
// action sequence over the mover's window as an explicit tree, computes the
// emulated opponent games by retrograde analysis on truncated subtrees and
// evaluates the mover's model bottom-up. Throws WorkBoundExceeded if the tree
// would exceed max_nodes.
Plan BruteForceEquilibrium(const SolveContext& ctx, Player mover,
                           long long max_nodes = 2'000'000);

enum class Outcome { kConsensus, kClusters, kUndecided };

std::string OutcomeName(Outcome o);

struct VerdictOptions {
  double cluster_tol = 1e-6;
  int convergence_window = 10;
  int union_window = 0;  // 0: 4 * lcm(T^A, T^D)
};

struct Verdict {
  Outcome outcome = Outcome::kUndecided;
  Partition clusters;
  // True iff the trace has at least one full window and the union of
  // resolved graphs over every window is connected.
  bool union_connected = false;
  // False iff union_connected holds but the verdict is not consensus.
  bool cross_check_ok = true;

  bool consensus() const { return outcome == Outcome::kConsensus; }
};

Verdict ConsensusVerdict(const Trace& trace, const GameSpec& spec,
                         const VerdictOptions& opt);

struct WorkBound {
  int max_edges = 5;
  int max_horizon = 6;
  double max_leaves = 2e7;

  friend bool operator==(const WorkBound&, const WorkBound&) = default;
};

// Leaves of one full decision tree: (attacks * defenses)^max(h^A, h^D).
double EstimateLeaves(const GameSpec& spec);
// Advisory messages for sizes beyond max_edges / max_horizon.
std::vector<std::string> WorkBoundWarnings(const GameSpec& spec,
                                           const WorkBound& wb);
// Throws WorkBoundExceeded when EstimateLeaves exceeds max_leaves.
void EnforceWorkBound(const GameSpec& spec, const WorkBound& wb);

}  // namespace jamgame

#endif  // JAMGAME_ANALYSIS_H_
