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

#include "safenav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "safenav/error.hpp"
#include "safenav/random.hpp"

namespace safenav {

using nlohmann::json;

namespace {

constexpr int kRejectionBudget = 100000;
constexpr double kCentroidClearance = 5.0;

}  // namespace

SyntheticTrajectory gen_synthetic(int steps, std::uint64_t seed, double dt, Point2 origin,
                                  double initial_speed) {
  if (steps < 2) throw ValidationError("synthetic trajectory needs at least two timesteps");
  if (!(dt > 0.0)) throw ValidationError("synthetic dt must be positive");
  Rng rng(seed, Stream::kSynthetic);
  const double jitter_r = std::sqrt(rng.uniform());
  const double jitter_a = rng.uniform(-std::numbers::pi, std::numbers::pi);
  Point2 p = origin + Point2{jitter_r * std::cos(jitter_a), jitter_r * std::sin(jitter_a)};

  const double period = steps * dt;
  double s = std::max(0.0, initial_speed);
  SyntheticTrajectory traj;
  traj.dt = dt;
  traj.records.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    const double a = 3.0 * std::sin(4.0 * std::numbers::pi * t / period);
    const double theta = 0.5 * std::numbers::pi * std::sin(2.0 * std::numbers::pi * t / period);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    traj.records.push_back({t, p.x, s * c, a * c, p.y, s * sn, a * sn, theta});
    s = std::max(0.0, s + a * dt);
    p = p + (s * dt) * Point2{c, sn};
  }
  return traj;
}

std::vector<ClusterSpec> default_landmark_spec() {
  return {{1, {40.0, 160.0}}, {2, {100.0, 165.0}}, {3, {165.0, 150.0}}, {4, {35.0, 95.0}},
          {5, {100.0, 100.0}}, {6, {40.0, 30.0}},  {7, {160.0, 40.0}}};
}

World gen_world(std::uint64_t seed, int n_obstacles, int n_hazards,
                const std::vector<ClusterSpec>& landmark_spec, Bounds bounds,
                TerrainModel terrain) {
  if (n_obstacles < 0 || n_hazards < 0) throw ValidationError("counts must be non-negative");
  Rng rng(seed, Stream::kWorld);

  std::vector<Landmark> landmarks;
  std::vector<Point2> centroids;
  for (const ClusterSpec& spec : landmark_spec) {
    if (spec.count < 3) throw ValidationError("landmark clusters need at least three members");
    std::vector<Point2> members;
    for (int j = 0; j < spec.count; ++j) {
      const double r = spec.spread * std::sqrt(rng.uniform());
      const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
      const Point2 p = spec.center + Point2{r * std::cos(a), r * std::sin(a)};
      landmarks.push_back({spec.id * 10 + j, p, spec.id});
      members.push_back(p);
    }
    centroids.push_back(centroid(members));
  }

  const auto place = [&](int count, double r_lo, double r_hi) {
    std::vector<Circle> out;
    for (int i = 0; i < count; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kRejectionBudget && !placed; ++attempt) {
        const Circle c{{rng.uniform(0.0, bounds.width), rng.uniform(0.0, bounds.height)},
                       rng.uniform(r_lo, r_hi)};
        placed = std::all_of(centroids.begin(), centroids.end(), [&](Point2 q) {
          return distance(q, c.center) > c.radius + kCentroidClearance;
        });
        if (placed) out.push_back(c);
      }
      if (!placed) throw GenerationError("rejection budget exhausted while placing the world");
    }
    return out;
  };
  ObstacleMap map;
  map.obstacles = place(n_obstacles, 2.0, 5.0);
  map.hazards = place(n_hazards, 3.0, 8.0);
  return World(bounds, std::move(landmarks), std::move(map), std::move(terrain), seed);
}

Polyline build_ground_truth_path(const World& world, const std::vector<int>& cluster_sequence) {
  if (cluster_sequence.size() < 2) throw ValidationError("a path needs at least two clusters");
  std::set<int> seen;
  std::vector<Point2> pts;
  for (int id : cluster_sequence) {
    if (!seen.insert(id).second) throw ValidationError("cluster id repeated in path");
    const LandmarkCluster* c = world.find_cluster(id);
    if (c == nullptr) throw ValidationError("unknown cluster id " + std::to_string(id));
    pts.push_back(c->centroid);
  }
  return Polyline(std::move(pts));
}

const PathSpec& Scenario::path(const std::string& name) const {
  for (const PathSpec& p : paths) {
    if (p.name == name) return p;
  }
  throw ValidationError("unknown path '" + name + "'");
}

Polyline Scenario::central_path(const std::string& name) const {
  return build_ground_truth_path(world, path(name).clusters);
}

SafePathBuffer Scenario::safe_path(const std::string& name) const {
  return build_safe_path(central_path(name), buffer.half_width, buffer.segments,
                         buffer.zone_weights, buffer.risk_mode);
}

FilterConfig Scenario::filter_config(double dt) const {
  FilterConfig cfg = FilterConfig::from_noise(process_noise, sensor_noise, dt);
  if (filter.Q) cfg.Q = *filter.Q;
  if (filter.R) cfg.R = *filter.R;
  cfg.jacobian_mode = filter.jacobian_mode;
  cfg.particle_count = filter.particle_count;
  cfg.resample_threshold = filter.resample_threshold;
  return cfg;
}

void Scenario::validate() const {
  if (paths.empty()) throw ValidationError("scenario defines no paths");
  std::set<std::string> names;
  for (const PathSpec& p : paths) {
    if (!names.insert(p.name).second) throw ValidationError("duplicate path name " + p.name);
    build_ground_truth_path(world, p.clusters);
  }
  if (!(buffer.half_width > 0.0)) throw ValidationError("buffer W must be positive");
  if (buffer.segments < 1) throw ValidationError("buffer segments must be >= 1");
  if (buffer.zone_weights.size() != 4) throw ValidationError("buffer needs four zone weights");
  RiskZoneConfig::equal_width(buffer.half_width, buffer.zone_weights, buffer.risk_mode);
  process_noise.validate();
  sensor_noise.validate();
  motion.validate();
  filter_config(motion.dt).validate();
  planner.validate();
  navigation.validate();
  if (synthetic.steps < 2 || !(synthetic.dt > 0.0)) {
    throw ValidationError("synthetic section needs steps >= 2 and dt > 0");
  }
}

Scenario default_scenario(std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.world = gen_world(seed);
  s.paths = {{"P1", {6, 5, 3}}, {"P2", {4, 1, 2, 3}}, {"P3", {7, 5, 2, 3}}};
  s.process_noise = {0.02, 0.02, 0.05, 0.05, 0.1, 0.1, 0.01};
  s.validate();
  return s;
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ValidationError("unknown field '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

// Accepts either the diagonal as a flat list or the full matrix.
template <int N>
Eigen::Matrix<double, N, N> matrix_from_json(const json& j, const std::string& name) {
  Eigen::Matrix<double, N, N> m = Eigen::Matrix<double, N, N>::Zero();
  if (!j.is_array() || j.size() != N) throw ValidationError(name + " must have " + std::to_string(N) + " entries");
  for (int r = 0; r < N; ++r) {
    if (j[r].is_number()) {
      m(r, r) = j[r].get<double>();
    } else {
      if (!j[r].is_array() || j[r].size() != N) throw ValidationError(name + " rows are malformed");
      for (int c = 0; c < N; ++c) m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

std::string risk_mode_name(RiskMode mode) {
  return mode == RiskMode::kDivide ? "divide" : "multiply";
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["seed"] = s.seed;
  j["bounds"] = {{"width", s.world.bounds().width}, {"height", s.world.bounds().height}};
  j["landmarks"] = json::array();
  for (const Landmark& lm : s.world.landmarks()) {
    j["landmarks"].push_back(
        {{"id", lm.id}, {"x", lm.position.x}, {"y", lm.position.y}, {"cluster", lm.cluster_id}});
  }
  for (const auto& [key, list] : {std::pair{"obstacles", &s.world.obstacle_map().obstacles},
                                  std::pair{"hazards", &s.world.obstacle_map().hazards}}) {
    j[key] = json::array();
    for (const Circle& c : *list) j[key].push_back({{"x", c.center.x}, {"y", c.center.y}, {"r", c.radius}});
  }
  const TerrainModel& t = s.world.terrain();
  if (t.is_grid()) {
    j["terrain"] = {{"mode", "grid"},
                    {"origin", {t.origin().x, t.origin().y}},
                    {"cell", t.cell_size()},
                    {"grid", t.rows()}};
  } else {
    j["terrain"] = {{"mode", "constant"}, {"tau", t.constant_tau()}};
  }
  j["paths"] = json::array();
  for (const PathSpec& p : s.paths) j["paths"].push_back({{"name", p.name}, {"clusters", p.clusters}});
  j["buffer"] = {{"W", s.buffer.half_width},
                 {"segments", s.buffer.segments},
                 {"zone_weights", s.buffer.zone_weights},
                 {"risk_mode", risk_mode_name(s.buffer.risk_mode)}};
  const NoiseParams& pn = s.process_noise;
  const SensorNoise& sn = s.sensor_noise;
  j["noise"] = {{"process",
                 {{"sigma_x", pn.sigma_x}, {"sigma_y", pn.sigma_y}, {"sigma_vx", pn.sigma_vx},
                  {"sigma_vy", pn.sigma_vy}, {"sigma_ax", pn.sigma_ax}, {"sigma_ay", pn.sigma_ay},
                  {"sigma_theta", pn.sigma_theta}}},
                {"sensor",
                 {{"sigma_range", sn.sigma_range}, {"sigma_fix_x", sn.sigma_fix_x},
                  {"sigma_fix_y", sn.sigma_fix_y}, {"sigma_imu_v", sn.sigma_imu_v},
                  {"sigma_imu_theta", sn.sigma_imu_theta}, {"detect_range", sn.detect_range}}}};
  j["motion"] = {{"a", s.motion.a}, {"d", s.motion.d}, {"m", s.motion.m},
                 {"v_max", s.motion.v_max}, {"dt", s.motion.dt}};
  json filter = {{"jacobian", s.filter.jacobian_mode == JacobianMode::kAnalytic
                                  ? "analytic"
                                  : "finite-difference"},
                 {"particle_count", s.filter.particle_count},
                 {"resample_threshold", s.filter.resample_threshold}};
  if (s.filter.Q) filter["Q"] = matrix_to_json(*s.filter.Q);
  if (s.filter.R) filter["R"] = matrix_to_json(*s.filter.R);
  j["filter"] = filter;
  const PlannerConfig& pc = s.planner;
  j["planner"] = {{"alpha", pc.alpha},           {"beta", pc.beta},
                  {"max_iterations", pc.max_iterations}, {"step_size", pc.step_size},
                  {"goal_radius", pc.goal_radius}, {"rewire_radius", pc.rewire_radius},
                  {"goal_bias", pc.goal_bias},     {"edge_risk_samples", pc.edge_risk_samples}};
  const NavConfig& nc = s.navigation;
  j["navigation"] = {{"speed", nc.speed},
                     {"subsegments_per_segment", nc.subsegments_per_segment},
                     {"lookahead", nc.lookahead},
                     {"obstacle_check_radius", nc.obstacle_check_radius},
                     {"clearance", nc.clearance},
                     {"max_steps", nc.max_steps},
                     {"goal_radius", nc.goal_radius},
                     {"max_replans", nc.max_replans},
                     {"max_back_steps", nc.max_back_steps}};
  j["synthetic"] = {{"steps", s.synthetic.steps},
                    {"dt", s.synthetic.dt},
                    {"origin", {s.synthetic.origin.x, s.synthetic.origin.y}},
                    {"initial_speed", s.synthetic.initial_speed}};
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    check_keys(j, {"seed", "bounds", "landmarks", "obstacles", "hazards", "terrain", "paths",
                   "buffer", "noise", "motion", "filter", "planner", "navigation", "synthetic"},
               "scenario");
    for (const char* key : {"bounds", "landmarks", "paths"}) {
      if (!j.contains(key)) throw ValidationError(std::string("scenario is missing '") + key + "'");
    }
    Scenario s;
    read(j, "seed", s.seed);

    Bounds bounds;
    check_keys(j["bounds"], {"width", "height"}, "bounds");
    read(j["bounds"], "width", bounds.width);
    read(j["bounds"], "height", bounds.height);

    std::vector<Landmark> landmarks;
    for (const json& lm : j["landmarks"]) {
      check_keys(lm, {"id", "x", "y", "cluster"}, "landmark");
      landmarks.push_back({lm.at("id").get<int>(),
                           {lm.at("x").get<double>(), lm.at("y").get<double>()},
                           lm.at("cluster").get<int>()});
    }
    ObstacleMap map;
    for (const auto& [key, list] :
         {std::pair{"obstacles", &map.obstacles}, std::pair{"hazards", &map.hazards}}) {
      if (!j.contains(key)) continue;
      for (const json& c : j[key]) {
        check_keys(c, {"x", "y", "r"}, key);
        list->push_back({{c.at("x").get<double>(), c.at("y").get<double>()}, c.at("r").get<double>()});
      }
    }
    TerrainModel terrain;
    if (j.contains("terrain")) {
      const json& t = j["terrain"];
      check_keys(t, {"mode", "tau", "origin", "cell", "grid"}, "terrain");
      const std::string mode = t.value("mode", "constant");
      if (mode == "constant") {
        terrain = TerrainModel(t.value("tau", 0.0));
      } else if (mode == "grid") {
        const auto origin = t.at("origin").get<std::vector<double>>();
        if (origin.size() != 2) throw ValidationError("terrain origin must be [x, y]");
        terrain = TerrainModel({origin[0], origin[1]}, t.at("cell").get<double>(),
                               t.at("grid").get<std::vector<std::vector<double>>>());
      } else {
        throw ValidationError("terrain mode must be constant or grid");
      }
    }
    s.world = World(bounds, std::move(landmarks), std::move(map), std::move(terrain), s.seed);

    for (const json& p : j["paths"]) {
      check_keys(p, {"name", "clusters"}, "path");
      s.paths.push_back({p.at("name").get<std::string>(), p.at("clusters").get<std::vector<int>>()});
    }
    if (j.contains("buffer")) {
      const json& b = j["buffer"];
      check_keys(b, {"W", "segments", "zone_weights", "risk_mode"}, "buffer");
      read(b, "W", s.buffer.half_width);
      read(b, "segments", s.buffer.segments);
      read(b, "zone_weights", s.buffer.zone_weights);
      const std::string mode = b.value("risk_mode", "divide");
      if (mode != "divide" && mode != "multiply") {
        throw ValidationError("risk_mode must be divide or multiply");
      }
      s.buffer.risk_mode = mode == "divide" ? RiskMode::kDivide : RiskMode::kMultiply;
    }
    if (j.contains("noise")) {
      const json& n = j["noise"];
      check_keys(n, {"process", "sensor"}, "noise");
      if (n.contains("process")) {
        const json& p = n["process"];
        check_keys(p, {"sigma_x", "sigma_y", "sigma_vx", "sigma_vy", "sigma_ax", "sigma_ay",
                       "sigma_theta"}, "noise.process");
        NoiseParams& q = s.process_noise;
        read(p, "sigma_x", q.sigma_x);
        read(p, "sigma_y", q.sigma_y);
        read(p, "sigma_vx", q.sigma_vx);
        read(p, "sigma_vy", q.sigma_vy);
        read(p, "sigma_ax", q.sigma_ax);
        read(p, "sigma_ay", q.sigma_ay);
        read(p, "sigma_theta", q.sigma_theta);
      }
      if (n.contains("sensor")) {
        const json& p = n["sensor"];
        check_keys(p, {"sigma_range", "sigma_fix_x", "sigma_fix_y", "sigma_imu_v",
                       "sigma_imu_theta", "detect_range"}, "noise.sensor");
        SensorNoise& q = s.sensor_noise;
        read(p, "sigma_range", q.sigma_range);
        read(p, "sigma_fix_x", q.sigma_fix_x);
        read(p, "sigma_fix_y", q.sigma_fix_y);
        read(p, "sigma_imu_v", q.sigma_imu_v);
        read(p, "sigma_imu_theta", q.sigma_imu_theta);
        read(p, "detect_range", q.detect_range);
      }
    }
    if (j.contains("motion")) {
      const json& m = j["motion"];
      check_keys(m, {"a", "d", "m", "v_max", "dt"}, "motion");
      read(m, "a", s.motion.a);
      read(m, "d", s.motion.d);
      read(m, "m", s.motion.m);
      read(m, "v_max", s.motion.v_max);
      read(m, "dt", s.motion.dt);
    }
    if (j.contains("filter")) {
      const json& f = j["filter"];
      check_keys(f, {"Q", "R", "jacobian", "particle_count", "resample_threshold"}, "filter");
      if (f.contains("Q")) s.filter.Q = matrix_from_json<4>(f["Q"], "filter.Q");
      if (f.contains("R")) s.filter.R = matrix_from_json<2>(f["R"], "filter.R");
      const std::string jac = f.value("jacobian", "analytic");
      if (jac != "analytic" && jac != "finite-difference") {
        throw ValidationError("filter.jacobian must be analytic or finite-difference");
      }
      s.filter.jacobian_mode =
          jac == "analytic" ? JacobianMode::kAnalytic : JacobianMode::kFiniteDifference;
      read(f, "particle_count", s.filter.particle_count);
      read(f, "resample_threshold", s.filter.resample_threshold);
    }
    if (j.contains("planner")) {
      const json& p = j["planner"];
      check_keys(p, {"alpha", "beta", "max_iterations", "step_size", "goal_radius",
                     "rewire_radius", "goal_bias", "edge_risk_samples"}, "planner");
      read(p, "alpha", s.planner.alpha);
      read(p, "beta", s.planner.beta);
      read(p, "max_iterations", s.planner.max_iterations);
      read(p, "step_size", s.planner.step_size);
      read(p, "goal_radius", s.planner.goal_radius);
      read(p, "rewire_radius", s.planner.rewire_radius);
      read(p, "goal_bias", s.planner.goal_bias);
      read(p, "edge_risk_samples", s.planner.edge_risk_samples);
    }
    if (j.contains("navigation")) {
      const json& n = j["navigation"];
      check_keys(n, {"speed", "subsegments_per_segment", "lookahead", "obstacle_check_radius",
                     "clearance", "max_steps", "goal_radius", "max_replans", "max_back_steps"},
                 "navigation");
      NavConfig& c = s.navigation;
      read(n, "speed", c.speed);
      read(n, "subsegments_per_segment", c.subsegments_per_segment);
      read(n, "lookahead", c.lookahead);
      read(n, "obstacle_check_radius", c.obstacle_check_radius);
      read(n, "clearance", c.clearance);
      read(n, "max_steps", c.max_steps);
      read(n, "goal_radius", c.goal_radius);
      read(n, "max_replans", c.max_replans);
      read(n, "max_back_steps", c.max_back_steps);
    }
    if (j.contains("synthetic")) {
      const json& n = j["synthetic"];
      check_keys(n, {"steps", "dt", "origin", "initial_speed"}, "synthetic");
      read(n, "steps", s.synthetic.steps);
      read(n, "dt", s.synthetic.dt);
      read(n, "initial_speed", s.synthetic.initial_speed);
      if (n.contains("origin")) {
        const auto o = n["origin"].get<std::vector<double>>();
        if (o.size() != 2) throw ValidationError("synthetic.origin must be [x, y]");
        s.synthetic.origin = {o[0], o[1]};
      }
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << scenario_to_json(scenario);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace safenav
