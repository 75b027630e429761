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

#ifndef SAFENAV_MOTION_MODEL_HPP_
#define SAFENAV_MOTION_MODEL_HPP_

#include <vector>

#include "safenav/geometry.hpp"
#include "safenav/random.hpp"

namespace safenav {

// Kinematic state of the moving entity. theta lives in (-pi, pi].
struct MotionState {
  Point2 position;
  double v = 0.0;
  double theta = 0.0;
};

struct ControlInput {
  double v_desired = 0.0;
  double delta_theta = 0.0;
};

struct MotionLimits {
  double a = 4.0;      // acceleration capability, m/s^2
  double d = 4.0;      // deceleration capability, m/s^2
  double m = 1.5;      // maneuverability, rad/s
  double v_max = 15.0;
  double dt = 0.1;

  void validate() const;
};

// Standard deviations of the zero-mean Gaussian process noises.
struct NoiseParams {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_vx = 0.0;
  double sigma_vy = 0.0;
  double sigma_ax = 0.0;
  double sigma_ay = 0.0;
  double sigma_theta = 0.0;

  void validate() const;

  // Scalar speed noise of the (x, y, v, theta) model: the per-axis velocity
  // noises collapse to their maximum and acceleration noise enters through
  // one timestep of integration.
  double speed_sigma(double dt) const;
};

// Terrain-effect field tau (metres of delay distance). Either a constant or
// a piecewise-constant grid of square cells anchored at `origin`; points
// outside the grid take the nearest cell.
class TerrainModel {
 public:
  TerrainModel() = default;
  explicit TerrainModel(double constant_tau);
  TerrainModel(Point2 origin, double cell_size,
               std::vector<std::vector<double>> rows);

  double tau(Point2 p) const;

  bool is_grid() const { return !rows_.empty(); }
  double constant_tau() const { return constant_; }
  Point2 origin() const { return origin_; }
  double cell_size() const { return cell_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  double constant_ = 0.0;
  Point2 origin_;
  double cell_ = 1.0;
  std::vector<std::vector<double>> rows_;  // rows_[j][i]: cell (i, j)
};

// Speed update with acceleration/deceleration limits; result in [0, v_max].
double update_velocity(double v_t, const ControlInput& u, const MotionLimits& lim);

// Heading update with the turn clipped to +-m*dt, renormalised.
double update_heading(double theta_t, const ControlInput& u, const MotionLimits& lim);

// One step of straight-line motion along the state's heading.
Point2 update_position(const MotionState& s, const MotionLimits& lim);

// Travel time from p1 to p2 at speed v_c with the terrain delay sampled at
// p1. Throws StalledEntityError for v_c <= 0.
double terrain_travel_time(Point2 p1, Point2 p2, double v_c, const TerrainModel& terrain);

// Noise-free transition: velocity, heading, then a displacement of
// v_{t+1} * t_tau along the new heading, where t_tau is the terrain travel
// time of the nominal step. A stopped entity does not move.
MotionState propagate(const MotionState& s, const ControlInput& u,
                      const MotionLimits& lim, const TerrainModel& terrain);

// Stochastic transition. Noise is drawn in a fixed order (speed, accel,
// heading, x, y) so a seeded source reproduces the successor bit for bit.
// With all sigmas zero this equals propagate().
MotionState step(const MotionState& s, const ControlInput& u, const MotionLimits& lim,
                 const NoiseParams& noise, const TerrainModel& terrain, Rng& rng);

}  // namespace safenav

#endif  // SAFENAV_MOTION_MODEL_HPP_
