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

#include "safenav/motion_model.hpp"

#include <algorithm>
#include <cmath>

#include "safenav/error.hpp"

namespace safenav {

void MotionLimits::validate() const {
  if (!(a > 0.0 && d > 0.0 && m > 0.0 && v_max > 0.0 && dt > 0.0)) {
    throw ValidationError("motion limits a, d, m, v_max, dt must all be positive");
  }
}

void NoiseParams::validate() const {
  for (double s : {sigma_x, sigma_y, sigma_vx, sigma_vy, sigma_ax, sigma_ay, sigma_theta}) {
    if (!(s >= 0.0)) throw ValidationError("noise sigmas must be non-negative");
  }
}

double NoiseParams::speed_sigma(double dt) const {
  const double sv = std::max(sigma_vx, sigma_vy);
  const double sa = std::max(sigma_ax, sigma_ay) * dt;
  return std::sqrt(sv * sv + sa * sa);
}

TerrainModel::TerrainModel(double constant_tau) : constant_(constant_tau) {
  if (!(constant_tau >= 0.0)) throw ValidationError("terrain tau must be >= 0");
}

TerrainModel::TerrainModel(Point2 origin, double cell_size,
                           std::vector<std::vector<double>> rows)
    : origin_(origin), cell_(cell_size), rows_(std::move(rows)) {
  if (!(cell_size > 0.0)) throw ValidationError("terrain cell size must be positive");
  if (rows_.empty() || rows_.front().empty()) {
    throw ValidationError("terrain grid must be non-empty");
  }
  for (const auto& row : rows_) {
    if (row.size() != rows_.front().size()) {
      throw ValidationError("terrain grid rows must have equal length");
    }
    for (double t : row) {
      if (!(t >= 0.0)) throw ValidationError("terrain tau must be >= 0");
    }
  }
}

double TerrainModel::tau(Point2 p) const {
  if (rows_.empty()) return constant_;
  const auto cell_index = [this](double coord, double origin, std::size_t count) {
    const double f = std::floor((coord - origin) / cell_);
    return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(count - 1)));
  };
  const std::size_t j = cell_index(p.y, origin_.y, rows_.size());
  const std::size_t i = cell_index(p.x, origin_.x, rows_[j].size());
  return rows_[j][i];
}

double update_velocity(double v_t, const ControlInput& u, const MotionLimits& lim) {
  if (u.v_desired > v_t) {
    return std::min({v_t + lim.a * lim.dt, u.v_desired, lim.v_max});
  }
  return std::min(std::max({v_t - lim.d * lim.dt, u.v_desired, 0.0}), lim.v_max);
}

double update_heading(double theta_t, const ControlInput& u, const MotionLimits& lim) {
  const double max_turn = lim.m * lim.dt;
  return wrap_angle(theta_t + std::clamp(u.delta_theta, -max_turn, max_turn));
}

Point2 update_position(const MotionState& s, const MotionLimits& lim) {
  const double step = s.v * lim.dt;
  return s.position + Point2{step * std::cos(s.theta), step * std::sin(s.theta)};
}

double terrain_travel_time(Point2 p1, Point2 p2, double v_c, const TerrainModel& terrain) {
  if (!(v_c > 0.0)) throw StalledEntityError("travel time undefined for a stalled entity");
  return distance(p1, p2) / v_c + terrain.tau(p1) / v_c;
}

namespace {

Point2 displace(Point2 from, double v_next, double theta_next, const MotionLimits& lim,
                const TerrainModel& terrain) {
  if (v_next <= 0.0) return from;
  // terrain_travel_time() of the nominal step, whose length is v_next * dt.
  const double t_tau = lim.dt + terrain.tau(from) / v_next;
  const double travel = v_next * t_tau;
  return from + Point2{travel * std::cos(theta_next), travel * std::sin(theta_next)};
}

}  // namespace

MotionState propagate(const MotionState& s, const ControlInput& u,
                      const MotionLimits& lim, const TerrainModel& terrain) {
  MotionState next;
  next.v = update_velocity(s.v, u, lim);
  next.theta = update_heading(s.theta, u, lim);
  next.position = displace(s.position, next.v, next.theta, lim, terrain);
  return next;
}

MotionState step(const MotionState& s, const ControlInput& u, const MotionLimits& lim,
                 const NoiseParams& noise, const TerrainModel& terrain, Rng& rng) {
  const double eps_v = rng.normal(std::max(noise.sigma_vx, noise.sigma_vy));
  const double eps_a = rng.normal(std::max(noise.sigma_ax, noise.sigma_ay));
  const double eps_theta = rng.normal(noise.sigma_theta);
  const double eps_x = rng.normal(noise.sigma_x);
  const double eps_y = rng.normal(noise.sigma_y);

  MotionState next;
  next.v = std::clamp(update_velocity(s.v, u, lim) + eps_v + eps_a * lim.dt, 0.0, lim.v_max);
  next.theta = wrap_angle(update_heading(s.theta, u, lim) + eps_theta);
  next.position = displace(s.position, next.v, next.theta, lim, terrain) + Point2{eps_x, eps_y};
  return next;
}

}  // namespace safenav
