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

#include "safenav/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "safenav/error.hpp"
#include "safenav/localization.hpp"
#include "safenav/random.hpp"

namespace safenav {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

MotionState path_start(const Polyline& central) {
  return {central.front(), 0.0, bearing(central[0], central[1])};
}

FilterState initial_filter_state(const PositionFix& fix, const ImuReading& imu,
                                 const SensorNoise& sn) {
  FilterState fs;
  fs.mean << fix.position.x, fix.position.y, imu.v, imu.theta;
  fs.covariance.diagonal() << sn.sigma_fix_x * sn.sigma_fix_x, sn.sigma_fix_y * sn.sigma_fix_y,
      sn.sigma_imu_v * sn.sigma_imu_v, sn.sigma_imu_theta * sn.sigma_imu_theta;
  return fs;
}

struct Reference {
  double dt = 0.1;
  std::vector<Point2> position;
  std::vector<double> speed;
  std::vector<double> heading;
};

Reference make_reference(const Scenario& scenario, const std::string& source,
                         std::uint64_t seed) {
  Reference ref;
  if (source == "synthetic") {
    const SyntheticSpec& spec = scenario.synthetic;
    const SyntheticTrajectory traj =
        gen_synthetic(spec.steps, seed, spec.dt, spec.origin, spec.initial_speed);
    ref.dt = traj.dt;
    for (const SyntheticRecord& r : traj.records) {
      ref.position.push_back({r.p_x, r.p_y});
      ref.speed.push_back(r.speed());
      ref.heading.push_back(r.theta);
    }
    return ref;
  }
  const Polyline central = scenario.central_path(source);
  ref.dt = scenario.motion.dt;
  const double v = scenario.navigation.speed;
  const auto n = static_cast<std::size_t>(std::floor(central.length() / (v * ref.dt))) + 1;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::min(central.length(), static_cast<double>(k) * v * ref.dt);
    const PolylineProjection proj = project_onto_polyline(central.point_at(s), central);
    ref.position.push_back(central.point_at(s));
    ref.speed.push_back(v);
    ref.heading.push_back(bearing(central[proj.edge], central[proj.edge + 1]));
  }
  return ref;
}

json row_to_json(const AggregateRow& r) {
  return {{"method", r.method}, {"filter", r.filter}, {"path", r.path},
          {"ade", r.ade},       {"fde", r.fde},       {"awrs", r.awrs},
          {"pct_err", r.pct_err}, {"step_ms", r.step_ms}, {"trials", r.trials},
          {"failures", r.failures}, {"unreliable", r.unreliable}};
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, int trial_id) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(trial_id));
}

AggregateRow aggregate(const std::vector<TrialReport>& trials, const std::string& method,
                       const std::string& filter, const std::string& path) {
  AggregateRow row{method, filter, path};
  int ok = 0;
  for (const TrialReport& t : trials) {
    if (t.method != method || t.filter != filter || t.path != path) continue;
    ++row.trials;
    if (t.outcome != "reached" || !t.has_metrics) {
      ++row.failures;
      continue;
    }
    ++ok;
    row.ade += t.metrics.ade;
    row.fde += t.metrics.fde;
    row.awrs += t.metrics.awrs;
    row.pct_err += t.metrics.percent_error;
    row.step_ms += t.metrics.mean_step_runtime;
  }
  if (ok > 0) {
    row.ade /= ok;
    row.fde /= ok;
    row.awrs /= ok;
    row.pct_err /= ok;
    row.step_ms /= ok;
  }
  row.unreliable = 2 * row.failures > row.trials;
  return row;
}

TrialRun run_trial(const Scenario& scenario, NavMethod method, FilterKind filter,
                   const std::string& path, int trial_id, std::uint64_t master_seed) {
  const SafePathBuffer buffer = scenario.safe_path(path);
  NavContext ctx;
  ctx.world = &scenario.world;
  ctx.buffer = &buffer;
  ctx.limits = scenario.motion;
  ctx.process_noise = scenario.process_noise;
  ctx.sensor_noise = scenario.sensor_noise;
  ctx.filter = scenario.filter_config(scenario.motion.dt);
  ctx.filter_kind = filter;
  ctx.planner = scenario.planner;
  ctx.nav = scenario.navigation;
  ctx.nav.method = method;

  TrialRun run;
  TrialReport& rep = run.report;
  rep.trial_id = trial_id;
  rep.seed = trial_seed(master_seed, trial_id);
  rep.method = to_string(method);
  rep.filter = to_string(filter);
  rep.path = path;
  run.record = navigate(path_start(buffer.central()), ctx, rep.seed);
  const NavRecord& rec = run.record;
  rep.outcome = to_string(rec.outcome);
  rep.abort_reason = rec.abort_reason;
  rep.replans = rec.replans;
  rep.back_steps = rec.back_steps;
  rep.buffer_violations = rec.buffer_violations;
  rep.degeneracy_events = rec.degeneracy_events;
  if (!rec.measured.empty()) {
    rep.has_metrics = true;
    rep.metrics = evaluate_trajectory(rec.measured, buffer.central().points(), buffer);
    rep.metrics.mean_step_runtime = rec.mean_step_ms;
  }
  return run;
}

AggregateReport run_trials(const Scenario& scenario, const RunRequest& request,
                           std::vector<TrialReport>* trial_reports) {
  if (request.trials < 1) throw ValidationError("trials must be >= 1");
  for (const std::string& p : request.paths) scenario.path(p);
  if (!request.trace_dir.empty()) std::filesystem::create_directories(request.trace_dir);

  AggregateReport report;
  for (NavMethod method : request.methods) {
    for (FilterKind filter : request.filters) {
      for (const std::string& path : request.paths) {
        std::vector<TrialReport> trials;
        const SafePathBuffer buffer = scenario.safe_path(path);
        for (int k = 0; k < request.trials; ++k) {
          TrialRun run = run_trial(scenario, method, filter, path, k, request.seed);
          if (!request.trace_dir.empty()) {
            const std::string name = to_string(method) + "_" + to_string(filter) + "_" + path +
                                     "_trial" + std::to_string(k) + ".csv";
            write_file((std::filesystem::path(request.trace_dir) / name).string(),
                       trace_to_csv(run.record, buffer));
          }
          trials.push_back(std::move(run.report));
        }
        report.rows.push_back(aggregate(trials, to_string(method), to_string(filter), path));
        if (trial_reports != nullptr) {
          trial_reports->insert(trial_reports->end(), trials.begin(), trials.end());
        }
      }
    }
  }
  return report;
}

TrialReport run_tracking_trial(const Scenario& scenario, const std::string& source,
                               FilterKind filter, int trial_id, std::uint64_t master_seed,
                               TrackingTrace* trace) {
  TrialReport rep;
  rep.trial_id = trial_id;
  rep.seed = trial_seed(master_seed, trial_id);
  rep.method = "track";
  rep.filter = to_string(filter);
  rep.path = source;

  const Reference ref = make_reference(scenario, source, rep.seed);
  MotionLimits lim = scenario.motion;
  lim.dt = ref.dt;
  const TerrainModel& terrain = scenario.world.terrain();
  const EstimatorContext ctx{lim, scenario.process_noise, terrain, scenario.filter_config(lim.dt)};

  Rng process_rng(rep.seed, Stream::kProcess);
  Rng sensor_rng(rep.seed, Stream::kSensor);
  Rng filter_rng(rep.seed, Stream::kFilter);

  MotionState truth{ref.position.front(), ref.speed.front(), ref.heading.front()};
  std::vector<Point2> truth_pts;
  std::vector<Point2> est_pts;
  std::vector<Point2> fix_pts;
  try {
    PositionFix fix = measure_position(truth.position, scenario.world, scenario.sensor_noise,
                                       sensor_rng);
    const ImuReading imu = measure_imu(truth, scenario.sensor_noise, sensor_rng);
    std::unique_ptr<StateEstimator> est = make_estimator(
        filter, initial_filter_state(fix, imu, scenario.sensor_noise), ctx, filter_rng);
    for (std::size_t k = 0; k + 1 < ref.position.size(); ++k) {
      const MotionState now = est->estimate();
      const ControlInput u{ref.speed[k + 1], wrap_angle(ref.heading[k + 1] - now.theta)};
      truth = step(truth, u, lim, scenario.process_noise, terrain, process_rng);
      fix = measure_position(truth.position, scenario.world, scenario.sensor_noise, sensor_rng);
      est->predict(u);
      est->update(fix);
      truth_pts.push_back(truth.position);
      est_pts.push_back(est->estimate().position);
      fix_pts.push_back(fix.position);
    }
    rep.outcome = "reached";
    rep.degeneracy_events = est->degeneracy_events();
  } catch (const Error& e) {
    rep.outcome = "aborted";
    rep.abort_reason = e.what();
  }

  if (truth_pts.size() >= 2 && path_length(truth_pts) > 0.0) {
    const Polyline truth_line(truth_pts);
    const RiskZoneConfig zones = RiskZoneConfig::equal_width(
        scenario.buffer.half_width, scenario.buffer.zone_weights, scenario.buffer.risk_mode);
    const SafePathBuffer around_truth(truth_line, scenario.buffer.half_width, {truth_line}, zones);
    rep.has_metrics = true;
    rep.metrics.ade = ade(est_pts, truth_pts);
    rep.metrics.fde = fde(est_pts, truth_pts);
    rep.metrics.awrs = awrs(est_pts, around_truth);
    rep.metrics.trajectory_length = path_length(est_pts);
    rep.metrics.percent_error = percent_error(rep.metrics.trajectory_length, path_length(truth_pts));
  } else if (rep.outcome == "reached") {
    rep.outcome = "aborted";
    rep.abort_reason = "tracking produced no usable trajectory";
  }
  if (trace != nullptr) *trace = {std::move(truth_pts), std::move(est_pts), std::move(fix_pts)};
  return rep;
}

AggregateReport run_tracking(const Scenario& scenario, const std::vector<std::string>& sources,
                             const std::vector<FilterKind>& filters, int trials,
                             std::uint64_t master_seed,
                             std::vector<TrialReport>* trial_reports) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  for (const std::string& s : sources) {
    if (s != "synthetic") scenario.path(s);
  }
  AggregateReport report;
  for (FilterKind filter : filters) {
    for (const std::string& source : sources) {
      std::vector<TrialReport> reps;
      for (int k = 0; k < trials; ++k) {
        reps.push_back(run_tracking_trial(scenario, source, filter, k, master_seed));
      }
      report.rows.push_back(aggregate(reps, "track", to_string(filter), source));
      if (trial_reports != nullptr) {
        trial_reports->insert(trial_reports->end(), reps.begin(), reps.end());
      }
    }
  }
  return report;
}

std::string report_to_json(const AggregateReport& report) {
  json rows = json::array();
  for (const AggregateRow& r : report.rows) rows.push_back(row_to_json(r));
  return json{{"rows", rows}}.dump(2) + "\n";
}

AggregateReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    AggregateReport report;
    for (const json& r : j.at("rows")) {
      AggregateRow row;
      row.method = r.at("method").get<std::string>();
      row.filter = r.at("filter").get<std::string>();
      row.path = r.at("path").get<std::string>();
      row.ade = r.at("ade").get<double>();
      row.fde = r.at("fde").get<double>();
      row.awrs = r.at("awrs").get<double>();
      row.pct_err = r.at("pct_err").get<double>();
      row.step_ms = r.at("step_ms").get<double>();
      row.trials = r.at("trials").get<int>();
      row.failures = r.at("failures").get<int>();
      row.unreliable = r.value("unreliable", false);
      report.rows.push_back(row);
    }
    return report;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const AggregateReport& report) {
  std::ostringstream out;
  out << "method,filter,path,ade,fde,awrs,pct_err,step_ms,trials,failures\n";
  for (const AggregateRow& r : report.rows) {
    out << r.method << ',' << r.filter << ',' << r.path << ',' << fmt(r.ade) << ','
        << fmt(r.fde) << ',' << fmt(r.awrs) << ',' << fmt(r.pct_err) << ',' << fmt(r.step_ms)
        << ',' << r.trials << ',' << r.failures << '\n';
  }
  return out.str();
}

std::string trials_to_json(const std::vector<TrialReport>& trials) {
  json out = json::array();
  for (const TrialReport& t : trials) {
    json item = {{"trial_id", t.trial_id},   {"seed", t.seed},
                 {"method", t.method},       {"filter", t.filter},
                 {"path", t.path},           {"outcome", t.outcome},
                 {"replans", t.replans},     {"back_steps", t.back_steps},
                 {"buffer_violations", t.buffer_violations},
                 {"degeneracy_events", t.degeneracy_events}};
    if (!t.abort_reason.empty()) item["abort_reason"] = t.abort_reason;
    if (t.has_metrics) {
      item["metrics"] = {{"ade", t.metrics.ade},
                         {"fde", t.metrics.fde},
                         {"awrs", t.metrics.awrs},
                         {"percent_error", t.metrics.percent_error},
                         {"mean_step_runtime", t.metrics.mean_step_runtime},
                         {"trajectory_length", t.metrics.trajectory_length}};
    }
    out.push_back(item);
  }
  return out.dump(2) + "\n";
}

std::string trace_to_csv(const NavRecord& rec, const SafePathBuffer& buffer) {
  std::ostringstream out;
  out << "step,truth_x,truth_y,measured_x,measured_y,predicted_x,predicted_y,v,theta,wrs\n";
  for (std::size_t k = 0; k < rec.measured.size(); ++k) {
    const MotionState& e = rec.estimates[k];
    out << k << ',' << fmt(rec.truth[k].position.x) << ',' << fmt(rec.truth[k].position.y) << ','
        << fmt(rec.measured[k].x) << ',' << fmt(rec.measured[k].y) << ','
        << fmt(rec.predicted[k].x) << ',' << fmt(rec.predicted[k].y) << ',' << fmt(e.v) << ','
        << fmt(e.theta) << ',' << fmt(buffer.wrs_at(rec.measured[k])) << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace safenav
