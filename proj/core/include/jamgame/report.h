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

#ifndef JAMGAME_REPORT_H_
#define JAMGAME_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jamgame/analysis.h"
#include "jamgame/rolling.h"
#include "jamgame/scenario.h"

namespace jamgame {

inline constexpr int kTraceVersion = 1;

struct DecisionValue {
  Player player = Player::kAttacker;
  TimeStep k = 0;
  int index = 1;
  double value = 0.0;

  friend bool operator==(const DecisionValue&, const DecisionValue&) = default;
};

// Everything reported about one run. A pure function of the scenario and the
// trace rows, so it can be recomputed from a parsed trace CSV.
struct RunSummary {
  std::string scenario_name;
  int steps = 0;
  bool converged = false;
  Outcome outcome = Outcome::kUndecided;
  Partition clusters;
  bool union_connected = false;
  bool cross_check_ok = true;
  double attacker_spent = 0.0;
  double defender_spent = 0.0;
  double defender_wasted = 0.0;
  int effective_recoveries = 0;  // total recovered edge-steps
  std::vector<DecisionValue> decisions;
  ClusterBound bound;
  bool within_bound = true;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

// Recomputes convergence from the state sequence with the scenario's run
// options, matching Run's stopping rule.
bool StepsConverged(const StateVector& x0, const std::vector<TraceStep>& steps,
                    const RunOptions& opt);

RunSummary Summarize(const Scenario& s, const std::vector<TraceStep>& steps);

// Trace CSV: two comment lines (format version, edge order), a header row,
// then one row per step. Masks are integers over the base edge (agent)
// order; reals are written in shortest round-trip form.
void WriteTraceCsv(std::ostream& out, const Graph& g,
                   const std::vector<TraceStep>& steps);

struct ParsedTrace {
  int version = 0;
  int num_agents = 0;
  std::vector<Edge> edges;
  std::vector<TraceStep> steps;
};

// Throws InvalidInput with a line number on malformed input.
ParsedTrace ParseTraceCsv(std::istream& in);

std::string SummaryJson(const RunSummary& s);
// Human-readable multi-line rendering of the same fields.
std::string SummaryText(const RunSummary& s);

// states.csv: k, x_1..x_n with k = 0 the initial state.
void WriteStatesCsv(std::ostream& out, const StateVector& x0,
                    const std::vector<TraceStep>& steps);
// energy.csv: cumulative spend, waste and budget per player over k.
void WriteEnergyCsv(std::ostream& out, const std::vector<TraceStep>& steps);

std::string AnalysisJson(const Scenario& s);
std::string AnalysisText(const Scenario& s);

// One swept parameter. Keys: horizons.attacker, horizons.defender,
// periods.attacker, periods.defender, attacker_energy.rho,
// defender_energy.rho, or the aliases hA, hD, TA, TD, rhoA, rhoD.
struct GridAxis {
  std::string key;
  std::vector<double> values;
};

// Parses "key=v1,v2,...". Throws InvalidInput on unknown keys, empty or
// non-numeric values.
GridAxis ParseGridAxis(const std::string& text);

enum class PointStatus { kOk, kValidationError, kWorkBoundExceeded };

std::string PointStatusName(PointStatus s);

struct SweepPoint {
  std::vector<double> values;  // one per axis, in axis order
  PointStatus status = PointStatus::kOk;
  std::string message;
  std::optional<RunSummary> summary;
};

// Cartesian product of the axes in row-major order (last axis fastest). An
// empty grid is the single base point. Failing points are recorded and the
// sweep continues.
std::vector<SweepPoint> RunSweep(const Scenario& base,
                                 const std::vector<GridAxis>& grid);

void WriteSweepCsv(std::ostream& out, const std::vector<GridAxis>& grid,
                   const std::vector<SweepPoint>& points);

}  // namespace jamgame

#endif  // JAMGAME_REPORT_H_
