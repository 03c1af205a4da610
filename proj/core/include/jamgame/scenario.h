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

#ifndef JAMGAME_SCENARIO_H_
#define JAMGAME_SCENARIO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "jamgame/analysis.h"
#include "jamgame/game.h"
#include "jamgame/rolling.h"

namespace jamgame {

inline constexpr int kScenarioVersion = 1;

// A complete, self-describing run configuration. Serialization writes every
// field, including defaults, so a saved scenario reloads to an equal value.
struct Scenario {
  std::string name;
  GameSpec spec;
  StateVector initial_state;
  RunOptions run;
  double cluster_tol = 1e-6;
  int union_window = 0;  // resolved to 4 * lcm(T^A, T^D) on load when 0
  WorkBound work_bound;

  VerdictOptions verdict_options() const {
    return {cluster_tol, run.convergence_window, union_window};
  }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Parses and validates scenario JSON. Throws InvalidInput whose message
// starts with the offending field path, e.g. "graph.edges[1]: ...".
Scenario ParseScenario(const std::string& text);
// Throws IoError if the file cannot be read.
Scenario LoadScenario(const std::filesystem::path& path);

std::string SerializeScenario(const Scenario& s);
void SaveScenario(const Scenario& s, const std::filesystem::path& path);

// Cross-field checks: connected graph with n >= 2, state length and
// finiteness, game and run parameters, tolerances, work bound.
void ValidateScenario(const Scenario& s);

}  // namespace jamgame

#endif  // JAMGAME_SCENARIO_H_
