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

#include "jamgame/report.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "jamgame/error.h"
#include "json.hpp"

namespace jamgame {
namespace {

using Json = nlohmann::json;

std::string Num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& FixedColumns() {
  static const std::vector<std::string> cols = {
      "k",           "a_decided",     "d_decided",
      "a_decision",  "d_decision",    "a_value",
      "d_value",     "strong_mask",   "normal_mask",
      "strong_nodes_mask", "normal_nodes_mask", "recover_planned_mask",
      "recover_effective_mask", "resolved_mask", "groups",
      "payoff",      "a_spent",       "a_budget",
      "d_spent",     "d_wasted",      "d_budget"};
  return cols;
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string StripCr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

[[noreturn]] void LineError(int line, const std::string& what) {
  throw InvalidInput("trace line " + std::to_string(line) + ": " + what);
}

double ParseDouble(const std::string& s, int line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    LineError(line, "bad number '" + s + "'");
  }
  return v;
}

long long ParseInt(const std::string& s, int line) {
  long long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    LineError(line, "bad integer '" + s + "'");
  }
  return v;
}

template <typename M>
M ParseMask(const std::string& s, int line) {
  long long v = ParseInt(s, line);
  if (v < 0 || v > 0xffffffffLL) LineError(line, "mask out of range");
  return M{static_cast<std::uint32_t>(v)};
}

Json PartitionJson(const Partition& p) {
  Json out = Json::array();
  for (const auto& g : p.groups) out.push_back(g);
  return out;
}

std::string PartitionText(const Partition& p) {
  std::string out;
  for (const auto& g : p.groups) {
    out += "{";
    for (std::size_t i = 0; i < g.size(); ++i) {
      out += (i ? "," : "") + std::to_string(g[i]);
    }
    out += "}";
  }
  return out;
}

const std::map<std::string, std::string>& GridAliases() {
  static const std::map<std::string, std::string> aliases = {
      {"hA", "horizons.attacker"},     {"hD", "horizons.defender"},
      {"TA", "periods.attacker"},      {"TD", "periods.defender"},
      {"rhoA", "attacker_energy.rho"}, {"rhoD", "defender_energy.rho"},
  };
  return aliases;
}

bool IsIntegerKey(const std::string& key) {
  return key.starts_with("horizons.") || key.starts_with("periods.");
}

void ApplyGridValue(Scenario& s, const std::string& key, double v) {
  int iv = static_cast<int>(v);
  if (key == "horizons.attacker") {
    s.spec.horizons.attacker = iv;
  } else if (key == "horizons.defender") {
    s.spec.horizons.defender = iv;
  } else if (key == "periods.attacker") {
    s.spec.periods.attacker = iv;
  } else if (key == "periods.defender") {
    s.spec.periods.defender = iv;
  } else if (key == "attacker_energy.rho") {
    s.spec.attacker_energy.rho = v;
  } else if (key == "defender_energy.rho") {
    s.spec.defender_energy.rho = v;
  } else {
    throw InvalidInput("grid: unknown key " + key);
  }
}

int DefaultUnionWindow(const Periods& p) {
  return 4 * std::lcm(std::max(1, p.attacker), std::max(1, p.defender));
}

}  // namespace

bool StepsConverged(const StateVector& x0, const std::vector<TraceStep>& steps,
                    const RunOptions& opt) {
  int quiet = 0;
  const StateVector* prev = &x0;
  bool converged = false;
  for (const TraceStep& row : steps) {
    double change = 0.0;
    for (std::size_t i = 0; i < row.x.size() && i < prev->size(); ++i) {
      change = std::max(change, std::abs(row.x[i] - (*prev)[i]));
    }
    quiet = change < opt.convergence_tol ? quiet + 1 : 0;
    if (quiet >= opt.convergence_window) converged = true;
    prev = &row.x;
  }
  return converged;
}

RunSummary Summarize(const Scenario& s, const std::vector<TraceStep>& steps) {
  RunSummary out;
  out.scenario_name = s.name;
  out.steps = static_cast<int>(steps.size());
  out.converged = StepsConverged(s.initial_state, steps, s.run);
  Trace trace;
  trace.initial_state = s.initial_state;
  trace.steps = steps;
  Verdict v = ConsensusVerdict(trace, s.spec, s.verdict_options());
  out.outcome = v.outcome;
  out.clusters = v.clusters;
  out.union_connected = v.union_connected;
  out.cross_check_ok = v.cross_check_ok;
  if (!steps.empty()) {
    out.attacker_spent = steps.back().attacker_spent;
    out.defender_spent = steps.back().defender_spent;
    out.defender_wasted = steps.back().defender_wasted;
  }
  for (const TraceStep& row : steps) {
    out.effective_recoveries += row.recover_effective.Count();
    if (row.attacker_decided) {
      out.decisions.push_back({Player::kAttacker, row.k, row.attacker_decision,
                               row.attacker_value});
    }
    if (row.defender_decided) {
      out.decisions.push_back({Player::kDefender, row.k, row.defender_decision,
                               row.defender_value});
    }
  }
  out.bound = ClusterUpperBound(s.spec);
  out.within_bound = out.clusters.size() <= out.bound.value;
  return out;
}

void WriteTraceCsv(std::ostream& out, const Graph& g,
                   const std::vector<TraceStep>& steps) {
  out << "# jamgame trace_version=" << kTraceVersion
      << " n=" << g.num_agents() << "\n# edges";
  for (const Edge& e : g.edges()) out << " " << e.u << "-" << e.v;
  out << "\n";
  const auto& cols = FixedColumns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  for (int i = 1; i <= g.num_agents(); ++i) out << ",x_" << i;
  out << "\n";
  for (const TraceStep& r : steps) {
    out << r.k << "," << r.attacker_decided << "," << r.defender_decided << ","
        << r.attacker_decision << "," << r.defender_decision << ","
        << Num(r.attacker_value) << "," << Num(r.defender_value) << ","
        << r.attack.strong.bits << "," << r.attack.normal.bits << ","
        << r.attack.strong_nodes.bits << "," << r.attack.normal_nodes.bits
        << "," << r.recover_planned.bits << "," << r.recover_effective.bits
        << "," << r.resolved.bits << "," << r.groups << "," << Num(r.payoff)
        << "," << Num(r.attacker_spent) << "," << Num(r.attacker_budget) << ","
        << Num(r.defender_spent) << "," << Num(r.defender_wasted) << ","
        << Num(r.defender_budget);
    for (double xi : r.x) out << "," << Num(xi);
    out << "\n";
  }
}

ParsedTrace ParseTraceCsv(std::istream& in) {
  ParsedTrace t;
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    line = StripCr(line);
    ++lineno;
    return true;
  };

  if (!next() || !line.starts_with("# jamgame trace_version=")) {
    LineError(1, "missing '# jamgame trace_version=' header");
  }
  {
    std::istringstream hdr(line.substr(2));
    std::string tag, version, agents;
    hdr >> tag >> version >> agents;
    t.version = static_cast<int>(
        ParseInt(version.substr(std::string("trace_version=").size()), 1));
    if (t.version != kTraceVersion) {
      LineError(1, "unsupported trace_version " + std::to_string(t.version));
    }
    if (!agents.starts_with("n=")) LineError(1, "missing n=");
    t.num_agents = static_cast<int>(ParseInt(agents.substr(2), 1));
  }
  if (!next() || !line.starts_with("# edges")) {
    LineError(lineno, "missing '# edges' line");
  }
  {
    std::istringstream es(line.substr(7));
    std::string tok;
    while (es >> tok) {
      auto parts = Split(tok, '-');
      if (parts.size() != 2) LineError(lineno, "bad edge '" + tok + "'");
      t.edges.push_back({static_cast<AgentId>(ParseInt(parts[0], lineno)),
                         static_cast<AgentId>(ParseInt(parts[1], lineno))});
    }
  }
  if (!next()) LineError(lineno + 1, "missing column header");
  const std::size_t fixed = FixedColumns().size();
  const std::size_t width = fixed + static_cast<std::size_t>(t.num_agents);
  {
    auto cols = Split(line, ',');
    if (cols.size() != width) LineError(lineno, "unexpected column count");
    for (std::size_t i = 0; i < fixed; ++i) {
      if (cols[i] != FixedColumns()[i]) {
        LineError(lineno, "unexpected column '" + cols[i] + "'");
      }
    }
  }
  while (next()) {
    if (line.empty()) continue;
    auto f = Split(line, ',');
    if (f.size() != width) LineError(lineno, "unexpected field count");
    TraceStep r;
    int c = 0;
    r.k = static_cast<TimeStep>(ParseInt(f[c++], lineno));
    r.attacker_decided = ParseInt(f[c++], lineno) != 0;
    r.defender_decided = ParseInt(f[c++], lineno) != 0;
    r.attacker_decision = static_cast<int>(ParseInt(f[c++], lineno));
    r.defender_decision = static_cast<int>(ParseInt(f[c++], lineno));
    r.attacker_value = ParseDouble(f[c++], lineno);
    r.defender_value = ParseDouble(f[c++], lineno);
    r.attack.strong = ParseMask<EdgeMask>(f[c++], lineno);
    r.attack.normal = ParseMask<EdgeMask>(f[c++], lineno);
    r.attack.strong_nodes = ParseMask<NodeMask>(f[c++], lineno);
    r.attack.normal_nodes = ParseMask<NodeMask>(f[c++], lineno);
    r.recover_planned = ParseMask<EdgeMask>(f[c++], lineno);
    r.recover_effective = ParseMask<EdgeMask>(f[c++], lineno);
    r.resolved = ParseMask<EdgeMask>(f[c++], lineno);
    r.groups = static_cast<int>(ParseInt(f[c++], lineno));
    r.payoff = ParseDouble(f[c++], lineno);
    r.attacker_spent = ParseDouble(f[c++], lineno);
    r.attacker_budget = ParseDouble(f[c++], lineno);
    r.defender_spent = ParseDouble(f[c++], lineno);
    r.defender_wasted = ParseDouble(f[c++], lineno);
    r.defender_budget = ParseDouble(f[c++], lineno);
    for (int i = 0; i < t.num_agents; ++i) {
      r.x.push_back(ParseDouble(f[c++], lineno));
    }
    t.steps.push_back(std::move(r));
  }
  return t;
}

std::string SummaryJson(const RunSummary& s) {
  Json decisions = Json::array();
  for (const DecisionValue& d : s.decisions) {
    decisions.push_back({{"player", PlayerName(d.player)},
                         {"k", d.k},
                         {"index", d.index},
                         {"value", d.value}});
  }
  Json j = {
      {"trace_version", kTraceVersion},
      {"scenario", s.scenario_name},
      {"steps", s.steps},
      {"converged", s.converged},
      {"outcome", OutcomeName(s.outcome)},
      {"consensus", s.outcome == Outcome::kConsensus},
      {"cluster_count", s.clusters.size()},
      {"clusters", PartitionJson(s.clusters)},
      {"union_connected", s.union_connected},
      {"cross_check_ok", s.cross_check_ok},
      {"attacker", {{"spent", s.attacker_spent}, {"wasted", 0.0}}},
      {"defender",
       {{"spent", s.defender_spent}, {"wasted", s.defender_wasted}}},
      {"effective_recoveries", s.effective_recoveries},
      {"decisions", decisions},
      {"bound",
       {{"value", s.bound.value},
        {"theta_index", s.bound.theta_index},
        {"note", s.bound.note},
        {"within_bound", s.within_bound}}},
  };
  return j.dump(2) + "\n";
}

std::string SummaryText(const RunSummary& s) {
  std::ostringstream o;
  o << "scenario: " << s.scenario_name << "\n"
    << "steps: " << s.steps << (s.converged ? " (converged)" : "") << "\n"
    << "outcome: " << OutcomeName(s.outcome) << "\n"
    << "clusters: " << s.clusters.size() << " " << PartitionText(s.clusters)
    << "\n"
    << "union graph connected: " << (s.union_connected ? "yes" : "no")
    << (s.cross_check_ok ? "" : " (CROSS-CHECK FAILED)") << "\n"
    << "attacker spent: " << Num(s.attacker_spent) << "\n"
    << "defender spent: " << Num(s.defender_spent)
    << ", wasted: " << Num(s.defender_wasted) << "\n"
    << "effective recoveries: " << s.effective_recoveries << "\n"
    << "cluster bound: " << s.bound.value << " (" << s.bound.note << "), "
    << (s.within_bound ? "respected" : "VIOLATED") << "\n"
    << "decisions: " << s.decisions.size() << "\n";
  return o.str();
}

void WriteStatesCsv(std::ostream& out, const StateVector& x0,
                    const std::vector<TraceStep>& steps) {
  out << "k";
  for (std::size_t i = 1; i <= x0.size(); ++i) out << ",x_" << i;
  out << "\n0";
  for (double v : x0) out << "," << Num(v);
  out << "\n";
  for (const TraceStep& r : steps) {
    out << r.k + 1;
    for (double v : r.x) out << "," << Num(v);
    out << "\n";
  }
}

void WriteEnergyCsv(std::ostream& out, const std::vector<TraceStep>& steps) {
  out << "k,a_spent,a_budget,d_spent,d_wasted,d_budget\n";
  for (const TraceStep& r : steps) {
    out << r.k << "," << Num(r.attacker_spent) << "," << Num(r.attacker_budget)
        << "," << Num(r.defender_spent) << "," << Num(r.defender_wasted) << ","
        << Num(r.defender_budget) << "\n";
  }
}

std::string AnalysisJson(const Scenario& s) {
  ConditionReport r = CheckConditions(s.spec);
  ClusterBound b = ClusterUpperBound(s.spec);
  Json j = {
      {"scenario", s.name},
      {"num_agents", r.num_agents},
      {"num_edges", r.num_edges},
      {"edge_connectivity", r.edge_connectivity},
      {"ratio_normal", r.ratio_normal},
      {"ratio_strong", r.ratio_strong},
      {"necessary_normal", r.necessary_normal},
      {"necessary_strong", r.necessary_strong},
      {"case_a", r.case_a},
      {"case_b", r.case_b},
      {"tighter_applicable", r.tighter_applicable},
      {"tighter_in_force", r.tighter_in_force},
      {"necessary_in_force", r.necessary_in_force},
      {"sufficient_full_split", r.sufficient_full_split},
      {"theta", ThetaVector(s.spec.graph, AttackMode::kEdge)},
      {"bound",
       {{"value", b.value}, {"theta_index", b.theta_index}, {"note", b.note}}},
      {"estimated_leaves", EstimateLeaves(s.spec)},
      {"warnings", WorkBoundWarnings(s.spec, s.work_bound)},
  };
  if (s.spec.cost_model.mode == AttackMode::kNode) {
    j["theta_nodes"] = ThetaVector(s.spec.graph, AttackMode::kNode);
    j["ratio_node_normal"] = r.ratio_node_normal;
    j["ratio_node_strong"] = r.ratio_node_strong;
    j["node_necessary_normal"] = r.node_necessary_normal;
    j["node_necessary_strong"] = r.node_necessary_strong;
  }
  return j.dump(2) + "\n";
}

std::string AnalysisText(const Scenario& s) {
  ConditionReport r = CheckConditions(s.spec);
  ClusterBound b = ClusterUpperBound(s.spec);
  auto yn = [](bool v) { return v ? "yes" : "no"; };
  auto list = [](const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += (i ? "," : "") + std::to_string(v[i]);
    }
    return out + "]";
  };
  std::ostringstream o;
  o << "scenario: " << s.name << "\n"
    << "agents: " << r.num_agents << ", edges: " << r.num_edges
    << ", edge connectivity: " << r.edge_connectivity << "\n"
    << "rho/beta (normal): " << Num(r.ratio_normal)
    << "  >= connectivity: " << yn(r.necessary_normal) << "\n"
    << "rho/beta (strong): " << Num(r.ratio_strong)
    << "  >= connectivity: " << yn(r.necessary_strong) << "\n"
    << "case (a): " << yn(r.case_a) << ", case (b): " << yn(r.case_b)
    << ", tighter condition in force: " << yn(r.tighter_in_force) << "\n"
    << "necessary condition for splitting holds: "
    << yn(r.necessary_in_force) << "\n"
    << "full split sufficient (rho/beta strong >= |E|): "
    << yn(r.sufficient_full_split) << "\n"
    << "theta: " << list(ThetaVector(s.spec.graph, AttackMode::kEdge)) << "\n";
  if (s.spec.cost_model.mode == AttackMode::kNode) {
    o << "theta (nodes): " << list(ThetaVector(s.spec.graph, AttackMode::kNode))
      << "\n"
      << "rho/beta node (normal): " << Num(r.ratio_node_normal)
      << "  >= 1: " << yn(r.node_necessary_normal) << "\n"
      << "rho/beta node (strong): " << Num(r.ratio_node_strong)
      << "  >= 1: " << yn(r.node_necessary_strong) << "\n";
  }
  o << "cluster upper bound: " << b.value << " (" << b.note << ")\n";
  for (const std::string& w : WorkBoundWarnings(s.spec, s.work_bound)) {
    o << "warning: " << w << "\n";
  }
  return o.str();
}

GridAxis ParseGridAxis(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw InvalidInput("grid: expected key=v1,v2,... in '" + text + "'");
  }
  GridAxis axis;
  axis.key = text.substr(0, eq);
  if (auto it = GridAliases().find(axis.key); it != GridAliases().end()) {
    axis.key = it->second;
  }
  bool known = false;
  for (const auto& [alias, key] : GridAliases()) known |= key == axis.key;
  if (!known) throw InvalidInput("grid: unknown key '" + axis.key + "'");
  for (const std::string& v : Split(text.substr(eq + 1), ',')) {
    double d = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), d);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size() ||
        !std::isfinite(d)) {
      throw InvalidInput("grid." + axis.key + ": bad value '" + v + "'");
    }
    if (IsIntegerKey(axis.key) && d != std::floor(d)) {
      throw InvalidInput("grid." + axis.key + ": expected an integer, got '" +
                         v + "'");
    }
    axis.values.push_back(d);
  }
  return axis;
}

std::string PointStatusName(PointStatus s) {
  switch (s) {
    case PointStatus::kOk:
      return "ok";
    case PointStatus::kValidationError:
      return "validation_error";
    case PointStatus::kWorkBoundExceeded:
      return "work_bound_exceeded";
  }
  return "unknown";
}

std::vector<SweepPoint> RunSweep(const Scenario& base,
                                 const std::vector<GridAxis>& grid) {
  std::size_t total = 1;
  for (const GridAxis& a : grid) total *= a.values.size();
  // An automatic union window follows swept periods.
  const bool auto_window =
      base.union_window == DefaultUnionWindow(base.spec.periods);
  std::vector<SweepPoint> points;
  for (std::size_t p = 0; p < total; ++p) {
    SweepPoint pt;
    Scenario s = base;
    std::size_t rest = p;
    pt.values.resize(grid.size());
    for (std::size_t i = grid.size(); i-- > 0;) {
      pt.values[i] = grid[i].values[rest % grid[i].values.size()];
      rest /= grid[i].values.size();
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ApplyGridValue(s, grid[i].key, pt.values[i]);
    }
    if (auto_window) s.union_window = DefaultUnionWindow(s.spec.periods);
    try {
      ValidateScenario(s);
      EnforceWorkBound(s.spec, s.work_bound);
      Trace t = Run(s.spec, s.initial_state, s.run);
      pt.summary = Summarize(s, t.steps);
    } catch (const InvalidInput& e) {
      pt.status = PointStatus::kValidationError;
      pt.message = e.what();
    } catch (const WorkBoundExceeded& e) {
      pt.status = PointStatus::kWorkBoundExceeded;
      pt.message = e.what();
    }
    points.push_back(std::move(pt));
  }
  return points;
}

void WriteSweepCsv(std::ostream& out, const std::vector<GridAxis>& grid,
                   const std::vector<SweepPoint>& points) {
  out << "point";
  for (const GridAxis& a : grid) out << "," << a.key;
  out << ",status,exit_code,outcome,cluster_count,bound,within_bound,steps,"
         "converged,attacker_spent,defender_spent,defender_wasted,"
         "effective_recoveries,message\n";
  for (std::size_t p = 0; p < points.size(); ++p) {
    const SweepPoint& pt = points[p];
    out << p;
    for (double v : pt.values) out << "," << Num(v);
    int code = pt.status == PointStatus::kOk                   ? 0
               : pt.status == PointStatus::kValidationError ? 2
                                                            : 3;
    out << "," << PointStatusName(pt.status) << "," << code;
    if (pt.summary) {
      const RunSummary& s = *pt.summary;
      out << "," << OutcomeName(s.outcome) << "," << s.clusters.size() << ","
          << s.bound.value << "," << s.within_bound << "," << s.steps << ","
          << s.converged << "," << Num(s.attacker_spent) << ","
          << Num(s.defender_spent) << "," << Num(s.defender_wasted) << ","
          << s.effective_recoveries << ",";
    } else {
      out << ",,,,,,,,,,,";
    }
    std::string msg = pt.message;
    for (char& c : msg) {
      if (c == '"') c = '\'';
    }
    out << "\"" << msg << "\"\n";
  }
}

}  // namespace jamgame
