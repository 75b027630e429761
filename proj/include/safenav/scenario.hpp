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

#ifndef SAFENAV_SCENARIO_HPP_
#define SAFENAV_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "safenav/filters.hpp"
#include "safenav/localization.hpp"
#include "safenav/motion_model.hpp"
#include "safenav/navigator.hpp"
#include "safenav/planner.hpp"
#include "safenav/risk.hpp"
#include "safenav/world.hpp"

namespace safenav {

// One timestep of the synthetic manoeuvre: position, velocity and
// acceleration per axis plus heading.
struct SyntheticRecord {
  double t = 0.0;
  double p_x = 0.0;
  double s_x = 0.0;
  double a_x = 0.0;
  double p_y = 0.0;
  double s_y = 0.0;
  double a_y = 0.0;
  double theta = 0.0;

  double speed() const { return std::hypot(s_x, s_y); }
};

struct SyntheticTrajectory {
  double dt = 0.05;
  std::vector<SyntheticRecord> records;
};

// Tangential acceleration a(t) = 3 sin(4 pi t / T) and heading
// theta(t) = (pi / 2) sin(2 pi t / T) with T = N dt, integrated forward from
// `origin` at `initial_speed`. The seed jitters the origin by up to 1 m.
SyntheticTrajectory gen_synthetic(int steps, std::uint64_t seed, double dt = 0.05,
                                  Point2 origin = {}, double initial_speed = 0.0);

struct ClusterSpec {
  int id = 0;
  Point2 center;
  int count = 4;
  double spread = 6.0;  // landmarks are placed uniformly within this radius
};

std::vector<ClusterSpec> default_landmark_spec();

// Landmarks from landmark_spec, then obstacles (radius 2-5 m) and hazards
// (radius 3-8 m) placed uniformly in the bounds and rejected when they come
// within 5 m of a cluster centroid. Throws GenerationError when the
// rejection budget runs out.
World gen_world(std::uint64_t seed, int n_obstacles = 25, int n_hazards = 25,
                const std::vector<ClusterSpec>& landmark_spec = default_landmark_spec(),
                Bounds bounds = {}, TerrainModel terrain = TerrainModel{});

// Polyline through the cluster centroids in order. Repeated or unknown
// cluster ids are rejected.
Polyline build_ground_truth_path(const World& world, const std::vector<int>& cluster_sequence);

struct PathSpec {
  std::string name;
  std::vector<int> clusters;
};

struct BufferSpec {
  double half_width = 10.0;
  int segments = 10;
  std::vector<double> zone_weights{2.0, 4.0, 6.0, 8.0};
  RiskMode risk_mode = RiskMode::kDivide;
};

// Q and R fall back to the noise-derived defaults when unset.
struct FilterSpec {
  std::optional<Eigen::Matrix4d> Q;
  std::optional<Eigen::Matrix2d> R;
  JacobianMode jacobian_mode = JacobianMode::kAnalytic;
  int particle_count = 1000;
  double resample_threshold = 0.5;
};

struct SyntheticSpec {
  int steps = 400;
  double dt = 0.05;
  Point2 origin{35.0, 95.0};
  double initial_speed = 0.0;
};

struct Scenario {
  World world;
  std::vector<PathSpec> paths;
  BufferSpec buffer;
  NoiseParams process_noise;
  SensorNoise sensor_noise;
  MotionLimits motion;
  FilterSpec filter;
  PlannerConfig planner;
  NavConfig navigation;
  SyntheticSpec synthetic;
  std::uint64_t seed = 0;

  const PathSpec& path(const std::string& name) const;
  Polyline central_path(const std::string& name) const;
  SafePathBuffer safe_path(const std::string& name) const;
  FilterConfig filter_config(double dt) const;
  void validate() const;
};

// Bundled layout: seven landmark clusters, three path types ending at
// cluster 3, 25 obstacles and 25 hazards.
Scenario default_scenario(std::uint64_t seed = 42);

std::string scenario_to_json(const Scenario& scenario);
// Throws ValidationError on malformed input or unknown fields.
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

}  // namespace safenav

#endif  // SAFENAV_SCENARIO_HPP_
