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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jamgame/analysis.h"
#include "jamgame/error.h"
#include "jamgame/report.h"
#include "jamgame/rolling.h"
#include "jamgame/scenario.h"

namespace jamgame::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string scenario;
  std::string output;
  bool json = false;
  bool seedless = false;
  std::optional<double> work_bound;
  bool plot_data = false;
  std::vector<std::string> grid;
};

Scenario Load(const Options& o) {
  Scenario s = LoadScenario(o.scenario);
  if (o.work_bound) {
    if (!(*o.work_bound >= 1.0)) {
      throw InvalidInput("--work-bound: must be >= 1");
    }
    s.work_bound.max_leaves = *o.work_bound;
  }
  return s;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed for " + path.string());
}

template <typename Fn>
void WriteWith(const fs::path& path, Fn&& fn) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  fn(f);
  if (!f) throw IoError("write failed for " + path.string());
}

void PrepareOutput(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
}

int CmdValidate(const Options& o, std::ostream& out) {
  Scenario s = Load(o);
  for (const std::string& w : WorkBoundWarnings(s.spec, s.work_bound)) {
    out << "warning: " << w << "\n";
  }
  EnforceWorkBound(s.spec, s.work_bound);
  out << "ok: " << (s.name.empty() ? o.scenario : s.name) << "\n";
  return kExitOk;
}

int CmdAnalyze(const Options& o, std::ostream& out) {
  Scenario s = Load(o);
  out << (o.json ? AnalysisJson(s) : AnalysisText(s));
  return kExitOk;
}

int CmdRun(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s = Load(o);
  for (const std::string& w : WorkBoundWarnings(s.spec, s.work_bound)) {
    err << "warning: " << w << "\n";
  }
  EnforceWorkBound(s.spec, s.work_bound);
  Trace trace = Run(s.spec, s.initial_state, s.run);
  RunSummary summary = Summarize(s, trace.steps);
  if (!o.output.empty()) {
    PrepareOutput(o.output);
    fs::path dir(o.output);
    WriteWith(dir / "trace.csv", [&](std::ostream& f) {
      WriteTraceCsv(f, s.spec.graph, trace.steps);
    });
    WriteFile(dir / "summary.json", SummaryJson(summary));
    WriteFile(dir / "summary.txt", SummaryText(summary));
    if (o.plot_data) {
      WriteWith(dir / "states.csv", [&](std::ostream& f) {
        WriteStatesCsv(f, s.initial_state, trace.steps);
      });
      WriteWith(dir / "energy.csv",
                [&](std::ostream& f) { WriteEnergyCsv(f, trace.steps); });
    }
  }
  out << (o.json ? SummaryJson(summary) : SummaryText(summary));
  return kExitOk;
}

int CmdSweep(const Options& o, std::ostream& out) {
  Scenario s = Load(o);
  std::vector<GridAxis> grid;
  for (const std::string& g : o.grid) grid.push_back(ParseGridAxis(g));
  std::vector<SweepPoint> points = RunSweep(s, grid);
  if (o.output.empty()) {
    WriteSweepCsv(out, grid, points);
  } else {
    PrepareOutput(o.output);
    WriteWith(fs::path(o.output) / "sweep.csv", [&](std::ostream& f) {
      WriteSweepCsv(f, grid, points);
    });
    out << "wrote " << points.size() << " grid points to "
        << (fs::path(o.output) / "sweep.csv").string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Jamming game simulator for multi-agent consensus", "jamgame"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", o.scenario, "Scenario file (JSON)")
        ->required();
    cmd->add_flag("--json", o.json, "Machine-readable output");
    cmd->add_flag("--seedless", o.seedless,
                  "Accepted for compatibility; runs are always deterministic");
    cmd->add_option("--work-bound", o.work_bound,
                    "Maximum decision-tree leaves per decision");
  };
  CLI::App* run = app.add_subcommand("run", "Simulate a scenario");
  add_common(run);
  run->add_option("--output", o.output, "Directory for trace and summary");
  run->add_flag("--plot-data", o.plot_data,
                "Also write states.csv and energy.csv");
  CLI::App* analyze =
      app.add_subcommand("analyze", "Report conditions and cluster bounds");
  add_common(analyze);
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid");
  add_common(sweep);
  sweep->add_option("--output", o.output, "Directory for sweep.csv");
  sweep->add_option("--grid", o.grid, "key=v1,v2,... (repeatable)")
      ->take_last()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  CLI::App* validate = app.add_subcommand("validate", "Check a scenario");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return CmdRun(o, out, err);
    if (analyze->parsed()) return CmdAnalyze(o, out);
    if (sweep->parsed()) return CmdSweep(o, out);
    if (validate->parsed()) return CmdValidate(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const WorkBoundExceeded& e) {
    err << "work bound exceeded: " << e.what() << "\n";
    return kExitWorkBound;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace jamgame::cli
