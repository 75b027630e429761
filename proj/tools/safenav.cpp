// Copyright 2026 The safenav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "safenav/error.hpp"
#include "safenav/harness.hpp"
#include "safenav/planner.hpp"
#include "safenav/risk.hpp"
#include "safenav/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

using nlohmann::json;
using safenav::Point2;
using safenav::ValidationError;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ValidationError("empty list: '" + text + "'");
  return out;
}

Point2 parse_point(const std::string& text) {
  const auto parts = split_list(text);
  if (parts.size() != 2) throw ValidationError("expected x,y but got '" + text + "'");
  try {
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    const double x = std::stod(parts[0], &used_x);
    const double y = std::stod(parts[1], &used_y);
    if (used_x != parts[0].size() || used_y != parts[1].size()) throw std::invalid_argument("");
    return {x, y};
  } catch (const std::logic_error&) {
    throw ValidationError("expected x,y but got '" + text + "'");
  }
}

std::string output_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw safenav::Error("cannot create directory " + dir + ": " + ec.message());
}

// Reads x/y columns from a CSV with a header row. Uses columns named "x" and
// "y" when present, otherwise the first "<name>_x"/"<name>_y" pair.
std::vector<Point2> read_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + " is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) header.push_back(col);
  }
  int ix = -1;
  int iy = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "x") ix = static_cast<int>(i);
    if (header[i] == "y") iy = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0) {
    for (std::size_t i = 0; i < header.size() && ix < 0; ++i) {
      const std::string& h = header[i];
      if (h.size() > 2 && h.ends_with("_x")) {
        const std::string want = h.substr(0, h.size() - 2) + "_y";
        for (std::size_t j = 0; j < header.size(); ++j) {
          if (header[j] == want) {
            ix = static_cast<int>(i);
            iy = static_cast<int>(j);
          }
        }
      }
    }
  }
  if (ix < 0 || iy < 0) throw ValidationError(path + " has no x/y columns");

  std::vector<Point2> pts;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const auto need = static_cast<std::size_t>(std::max(ix, iy));
    if (cells.size() <= need) {
      throw ValidationError(path + ": row " + std::to_string(row) + " is too short");
    }
    try {
      pts.push_back({std::stod(cells[ix]), std::stod(cells[iy])});
    } catch (const std::logic_error&) {
      throw ValidationError(path + ": bad number on row " + std::to_string(row));
    }
  }
  if (pts.size() < 2) throw ValidationError(path + " needs at least two points");
  return pts;
}

int cmd_gen_scenario(std::uint64_t seed, const std::string& out) {
  safenav::save_scenario(safenav::default_scenario(seed), out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

struct RunArgs {
  std::string scenario;
  std::string method;
  std::string filter;
  std::string path;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool traces = false;
};

int cmd_run(const RunArgs& a) {
  const safenav::Scenario scenario = safenav::load_scenario(a.scenario);
  safenav::RunRequest req;
  for (const auto& m : split_list(a.method)) req.methods.push_back(safenav::parse_method(m));
  for (const auto& f : split_list(a.filter)) req.filters.push_back(safenav::parse_filter(f));
  req.paths = split_list(a.path);
  req.trials = a.trials;
  req.seed = a.seed;
  ensure_dir(a.out);
  if (a.traces) req.trace_dir = output_path(a.out, "traces");

  std::vector<safenav::TrialReport> trials;
  const safenav::AggregateReport report = safenav::run_trials(scenario, req, &trials);
  safenav::write_file(output_path(a.out, "report.json"), safenav::report_to_json(report));
  safenav::write_file(output_path(a.out, "report.csv"), safenav::report_to_csv(report));
  safenav::write_file(output_path(a.out, "trials.json"), safenav::trials_to_json(trials));
  std::cout << safenav::report_to_csv(report);
  return kExitOk;
}

struct TrackArgs {
  std::string scenario;
  std::string filter;
  std::string source;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_track(const TrackArgs& a) {
  const safenav::Scenario scenario = safenav::load_scenario(a.scenario);
  std::vector<safenav::FilterKind> filters;
  for (const auto& f : split_list(a.filter)) filters.push_back(safenav::parse_filter(f));
  const auto sources = split_list(a.source);
  ensure_dir(a.out);
  std::vector<safenav::TrialReport> trials;
  const safenav::AggregateReport report =
      safenav::run_tracking(scenario, sources, filters, a.trials, a.seed, &trials);
  safenav::write_file(output_path(a.out, "report.json"), safenav::report_to_json(report));
  safenav::write_file(output_path(a.out, "report.csv"), safenav::report_to_csv(report));
  safenav::write_file(output_path(a.out, "trials.json"), safenav::trials_to_json(trials));
  std::cout << safenav::report_to_csv(report);
  return kExitOk;
}

struct PlanArgs {
  std::string scenario;
  std::string start;
  std::string goal;
  double beta = 1.0;
  std::string path;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_plan(const PlanArgs& a) {
  const safenav::Scenario scenario = safenav::load_scenario(a.scenario);
  const Point2 start = parse_point(a.start);
  const Point2 goal = parse_point(a.goal);
  safenav::PlannerConfig cfg = scenario.planner;
  cfg.beta = a.beta;
  cfg.validate();

  // Risk is measured against the named path, or the straight start-goal line.
  const safenav::SafePathBuffer buffer =
      a.path.empty()
          ? safenav::build_safe_path(safenav::Polyline({start, goal}),
                                     scenario.buffer.half_width, scenario.buffer.segments,
                                     scenario.buffer.zone_weights, scenario.buffer.risk_mode)
          : scenario.safe_path(a.path);
  const std::uint64_t seed = a.seed != 0 ? a.seed : scenario.seed;
  safenav::Rng rng(seed, safenav::Stream::kPlanner);

  json doc;
  doc["start"] = {start.x, start.y};
  doc["goal"] = {goal.x, goal.y};
  doc["alpha"] = cfg.alpha;
  doc["beta"] = cfg.beta;
  doc["seed"] = seed;
  int code = kExitOk;
  try {
    const safenav::PlanResult res =
        safenav::plan(start, goal, scenario.world.obstacle_map(), buffer, cfg, rng);
    json pts = json::array();
    for (const Point2& p : res.path) pts.push_back({p.x, p.y});
    doc["status"] = "ok";
    doc["path"] = pts;
    doc["total_cost"] = res.total_cost;
    doc["length_cost"] = res.length_cost;
    doc["risk_cost"] = res.risk_cost;
    doc["iterations"] = res.iterations_used;
    doc["awrs"] = safenav::awrs(res.path, buffer);
    std::cout << "path with " << res.path.size() << " points, cost " << res.total_cost << "\n";
  } catch (const safenav::PlanningFailed& e) {
    doc["status"] = "failed";
    doc["reason"] = e.what();
    doc["best_partial_cost"] = e.best_partial_cost();
    std::cerr << "error: " << e.what() << "\n";
    code = kExitRuntime;
  }
  safenav::write_file(a.out, doc.dump(2) + "\n");
  return code;
}

int cmd_metrics(const std::string& truth_file, const std::string& est_file, double half_width,
                int segments) {
  const auto truth = read_trajectory(truth_file);
  const auto est = read_trajectory(est_file);
  const safenav::SafePathBuffer buffer =
      safenav::build_safe_path(safenav::Polyline(truth), half_width, segments);
  const safenav::TrajectoryMetrics m = safenav::evaluate_trajectory(est, truth, buffer);
  json doc;
  doc["ade"] = m.ade;
  doc["fde"] = m.fde;
  doc["awrs"] = m.awrs;
  doc["pct_err"] = m.percent_error;
  doc["est_length"] = m.trajectory_length;
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-aware navigation simulator"};
  app.require_subcommand(1);

  std::uint64_t gen_seed = 42;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-scenario", "Write the bundled scenario for a seed");
  gen->add_option("--seed", gen_seed, "World generation seed")->required();
  gen->add_option("--out", gen_out, "Output JSON file")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Monte-Carlo navigation trials");
  run->add_option("--scenario", run_args.scenario, "Scenario JSON")->required();
  run->add_option("--method", run_args.method, "chull|centroid (comma list allowed)")->required();
  run->add_option("--filter", run_args.filter, "ekf|pf (comma list allowed)")->required();
  run->add_option("--path", run_args.path, "Path name (comma list allowed)")->required();
  run->add_option("--trials", run_args.trials, "Trials per combination")->required();
  run->add_option("--seed", run_args.seed, "Master seed")->required();
  run->add_option("--out", run_args.out, "Output directory")->required();
  run->add_flag("--traces", run_args.traces, "Write per-trial step CSVs");

  TrackArgs track_args;
  auto* track = app.add_subcommand("track", "Filter-only tracking trials");
  track->add_option("--scenario", track_args.scenario, "Scenario JSON")->required();
  track->add_option("--filter", track_args.filter, "ekf|pf (comma list allowed)")->required();
  track->add_option("--source", track_args.source, "synthetic or path names (comma list)")
      ->required();
  track->add_option("--trials", track_args.trials, "Trials per combination")->required();
  track->add_option("--seed", track_args.seed, "Master seed")->required();
  track->add_option("--out", track_args.out, "Output directory")->required();

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan a risk-aware path");
  plan->add_option("--scenario", plan_args.scenario, "Scenario JSON")->required();
  plan->add_option("--start", plan_args.start, "Start x,y")->required();
  plan->add_option("--goal", plan_args.goal, "Goal x,y")->required();
  plan->add_option("--beta", plan_args.beta, "Risk weight")->required();
  plan->add_option("--path", plan_args.path, "Measure risk against this scenario path");
  plan->add_option("--seed", plan_args.seed, "Planner seed (default: scenario seed)");
  plan->add_option("--out", plan_args.out, "Output JSON file")->required();

  std::string truth_file;
  std::string est_file;
  double half_width = 10.0;
  int segments = 10;
  auto* metrics = app.add_subcommand("metrics", "ADE/FDE/AWRS/percent error of two trajectories");
  metrics->add_option("--truth", truth_file, "Truth CSV")->required();
  metrics->add_option("--est", est_file, "Estimate CSV")->required();
  metrics->add_option("--half-width", half_width, "Buffer half-width around the truth");
  metrics->add_option("--segments", segments, "Buffer segment count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*gen) return cmd_gen_scenario(gen_seed, gen_out);
    if (*run) return cmd_run(run_args);
    if (*track) return cmd_track(track_args);
    if (*plan) return cmd_plan(plan_args);
    if (*metrics) return cmd_metrics(truth_file, est_file, half_width, segments);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
