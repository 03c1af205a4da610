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

#ifndef JAMGAME_DYNAMICS_H_
#define JAMGAME_DYNAMICS_H_

#include <vector>

#include "jamgame/graph.h"

namespace jamgame {

// Agent states x_1..x_n, stored 0-based (x[0] is agent 1).
using StateVector = std::vector<double>;

// Symmetric consensus weights a_ij, zero on the diagonal, positive exactly on
// the base graph's edges, every row sum strictly below one.
class WeightMatrix {
 public:
  WeightMatrix() = default;

  // a_ij = weight on every base edge. Throws InvalidInput if the resulting
  // row sums reach one or weight <= 0.
  static WeightMatrix Uniform(const Graph& base, double weight);
  // Default weighting 1/n on every base edge.
  static WeightMatrix Default(const Graph& base);
  // Full n x n matrix; validated against `base`.
  static WeightMatrix FromMatrix(const Graph& base,
                                 const std::vector<std::vector<double>>& a);

  int size() const { return n_; }
  // 1-based agent labels.
  double at(AgentId i, AgentId j) const { return a_[(i - 1) * n_ + (j - 1)]; }
  // Weight of base edge `index`.
  double edge_weight(int index) const { return edge_weights_[index]; }
  std::vector<std::vector<double>> ToMatrix() const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<double> a_;
  std::vector<double> edge_weights_;
};

// One synchronous update x_i += sum_{j in N_i} a_ij (x_j - x_i), where the
// neighbour sets come from the resolved graph.
StateVector ConsensusStep(const StateVector& x, const Graph& resolved,
                          const WeightMatrix& w);
// Same, for the subgraph of `base` restricted to `active` edges; `w` must be
// built on `base`.
StateVector ConsensusStep(const StateVector& x, const Graph& base,
                          EdgeMask active, const WeightMatrix& w);

// Sum over pairs i<j of (x_i - x_j)^2, i.e. the complete-graph Laplacian
// quadratic form.
double StateDifference(const StateVector& x);

// Single-linkage grouping on sorted states: neighbours closer than or equal
// to `tol` share a cluster.
Partition DetectClusters(const StateVector& x, double tol);

}  // namespace jamgame

#endif  // JAMGAME_DYNAMICS_H_
