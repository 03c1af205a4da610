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

#include "jamgame/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jamgame/error.h"

namespace jamgame {
namespace {

void CheckRowSums(const WeightMatrix& w) {
  for (int i = 1; i <= w.size(); ++i) {
    double sum = 0.0;
    for (int j = 1; j <= w.size(); ++j) {
      if (j != i) sum += w.at(i, j);
    }
    if (!(sum < 1.0)) {
      throw InvalidInput("consensus weights of agent " + std::to_string(i) +
                         " sum to " + std::to_string(sum) +
                         "; row sums must be < 1");
    }
  }
}

}  // namespace

WeightMatrix WeightMatrix::Uniform(const Graph& base, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw InvalidInput("uniform consensus weight must be positive");
  }
  std::vector<std::vector<double>> a(
      base.num_agents(), std::vector<double>(base.num_agents(), 0.0));
  for (const Edge& e : base.edges()) {
    a[e.u - 1][e.v - 1] = weight;
    a[e.v - 1][e.u - 1] = weight;
  }
  return FromMatrix(base, a);
}

WeightMatrix WeightMatrix::Default(const Graph& base) {
  return Uniform(base, 1.0 / base.num_agents());
}

WeightMatrix WeightMatrix::FromMatrix(
    const Graph& base, const std::vector<std::vector<double>>& a) {
  const int n = base.num_agents();
  if (static_cast<int>(a.size()) != n) {
    throw InvalidInput("weight matrix must be " + std::to_string(n) + "x" +
                       std::to_string(n));
  }
  WeightMatrix w;
  w.n_ = n;
  w.a_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) {
      throw InvalidInput("weight matrix row " + std::to_string(i + 1) +
                         " has the wrong length");
    }
    for (int j = 0; j < n; ++j) {
      double v = a[i][j];
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInput("weights must be finite and nonnegative");
      }
      if (i == j && v != 0.0) {
        throw InvalidInput("weight matrix diagonal must be zero");
      }
      if (a[j][i] != v) {
        throw InvalidInput("weight matrix must be symmetric");
      }
      bool is_edge = i != j && base.EdgeIndex(MakeEdge(i + 1, j + 1));
      if (is_edge && v <= 0.0) {
        throw InvalidInput("every base edge needs a positive weight");
      }
      if (!is_edge && v != 0.0) {
        throw InvalidInput("weight on a non-edge (" + std::to_string(i + 1) +
                           "," + std::to_string(j + 1) + ")");
      }
      w.a_[i * n + j] = v;
    }
  }
  CheckRowSums(w);
  for (const Edge& e : base.edges()) w.edge_weights_.push_back(w.at(e.u, e.v));
  return w;
}

std::vector<std::vector<double>> WeightMatrix::ToMatrix() const {
  std::vector<std::vector<double>> m(n_, std::vector<double>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m[i][j] = a_[i * n_ + j];
  }
  return m;
}

StateVector ConsensusStep(const StateVector& x, const Graph& base,
                          EdgeMask active, const WeightMatrix& w) {
  if (static_cast<int>(x.size()) != base.num_agents() ||
      w.size() != base.num_agents()) {
    throw InvalidInput("state, graph and weights disagree on agent count");
  }
  StateVector next = x;
  for (int i : active.Indices()) {
    if (i >= base.num_edges()) break;
    const Edge& e = base.edges()[i];
    double flow = w.edge_weight(i) * (x[e.v - 1] - x[e.u - 1]);
    next[e.u - 1] += flow;
    next[e.v - 1] -= flow;
  }
  return next;
}

StateVector ConsensusStep(const StateVector& x, const Graph& resolved,
                          const WeightMatrix& w) {
  if (static_cast<int>(x.size()) != resolved.num_agents() ||
      w.size() != resolved.num_agents()) {
    throw InvalidInput("state, graph and weights disagree on agent count");
  }
  StateVector next = x;
  for (const Edge& e : resolved.edges()) {
    double flow = w.at(e.u, e.v) * (x[e.v - 1] - x[e.u - 1]);
    next[e.u - 1] += flow;
    next[e.v - 1] -= flow;
  }
  return next;
}

double StateDifference(const StateVector& x) {
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      double d = x[i] - x[j];
      z += d * d;
    }
  }
  return z;
}

Partition DetectClusters(const StateVector& x, double tol) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] < x[b]; });
  Partition p;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || x[order[k]] - x[order[k - 1]] > tol) p.groups.emplace_back();
    p.groups.back().push_back(order[k] + 1);
  }
  for (auto& g : p.groups) std::sort(g.begin(), g.end());
  std::sort(p.groups.begin(), p.groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

}  // namespace jamgame
