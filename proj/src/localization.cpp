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

#include "safenav/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "safenav/error.hpp"

namespace safenav {

namespace {

constexpr int kMaxGaussNewtonIterations = 20;
constexpr double kStepTolerance = 1e-10;
constexpr double kConditionFloor = 1e-10;

// Solves the 2x2 normal equations, rejecting near-singular systems.
bool solve_normal(const Eigen::Matrix2d& ata, const Eigen::Vector2d& atb, Eigen::Vector2d* x) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(ata);
  const double hi = eig.eigenvalues()(1);
  const double lo = eig.eigenvalues()(0);
  if (!(hi > 0.0) || lo <= kConditionFloor * hi) return false;
  *x = ata.ldlt().solve(atb);
  return true;
}

}  // namespace

void SensorNoise::validate() const {
  for (double s : {sigma_range, sigma_fix_x, sigma_fix_y, sigma_imu_v, sigma_imu_theta,
                   detect_range}) {
    if (!(s >= 0.0)) throw ValidationError("sensor noise parameters must be non-negative");
  }
}

Point2 trilaterate(std::span<const Point2> anchors, std::span<const double> distances) {
  if (anchors.size() < 3) throw ValidationError("trilateration needs at least three anchors");
  if (anchors.size() != distances.size()) {
    throw ValidationError("anchor and distance counts differ");
  }
  for (double d : distances) {
    if (!(d >= 0.0)) throw ValidationError("ranges must be non-negative");
  }

  // Work relative to the anchor mean for conditioning.
  const Point2 origin = centroid(anchors);
  std::vector<Point2> a(anchors.size());
  std::transform(anchors.begin(), anchors.end(), a.begin(),
                 [origin](Point2 p) { return p - origin; });

  Eigen::Matrix2d ata = Eigen::Matrix2d::Zero();
  Eigen::Vector2d atb = Eigen::Vector2d::Zero();
  const double k0 = dot(a[0], a[0]) - distances[0] * distances[0];
  for (std::size_t i = 1; i < a.size(); ++i) {
    const Eigen::Vector2d row(2.0 * (a[i].x - a[0].x), 2.0 * (a[i].y - a[0].y));
    const double rhs = dot(a[i], a[i]) - distances[i] * distances[i] - k0;
    ata += row * row.transpose();
    atb += row * rhs;
  }
  Eigen::Vector2d p;
  if (!solve_normal(ata, atb, &p)) {
    throw IllConditionedError("trilateration anchors are collinear");
  }

  for (int iter = 0; iter < kMaxGaussNewtonIterations; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    double max_residual = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Eigen::Vector2d diff(p.x() - a[i].x, p.y() - a[i].y);
      const double range = diff.norm();
      const double r = range - distances[i];
      max_residual = std::max(max_residual, std::abs(r));
      if (range < 1e-12) continue;  // gradient undefined on the anchor itself
      const Eigen::Vector2d j = diff / range;
      jtj += j * j.transpose();
      jtr += j * r;
    }
    if (max_residual < 1e-12) break;
    Eigen::Vector2d delta;
    if (!solve_normal(jtj, -jtr, &delta)) break;
    p += delta;
    if (delta.norm() < kStepTolerance) break;
    if (iter == kMaxGaussNewtonIterations - 1) {
      throw ConvergenceError("trilateration refinement did not converge");
    }
  }
  return {p.x() + origin.x, p.y() + origin.y};
}

Point2 trilaterate(std::span<const Landmark> anchors, std::span<const double> distances) {
  std::vector<Point2> pts;
  pts.reserve(anchors.size());
  for (const Landmark& lm : anchors) pts.push_back(lm.position);
  return trilaterate(pts, distances);
}

PositionFix measure_position(Point2 true_pos, const World& world, const SensorNoise& noise,
                             Rng& rng) {
  const LandmarkCluster* chosen = nullptr;
  double chosen_distance = std::numeric_limits<double>::infinity();
  std::vector<Point2> anchors;
  for (const LandmarkCluster& cluster : world.clusters()) {
    const double d = distance(cluster.centroid, true_pos);
    if (d >= chosen_distance) continue;
    std::vector<Point2> in_range;
    for (int id : cluster.member_ids) {
      const Point2 pos = world.landmark(id).position;
      if (distance(pos, true_pos) <= noise.detect_range) in_range.push_back(pos);
    }
    if (in_range.size() < 3) continue;
    chosen = &cluster;
    chosen_distance = d;
    anchors = std::move(in_range);
  }
  if (chosen == nullptr) {
    throw LocalizationUnavailable("no landmark cluster with three members in range");
  }

  std::vector<double> ranges(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    ranges[i] = std::max(0.0, distance(anchors[i], true_pos) + rng.normal(noise.sigma_range));
  }
  PositionFix fix;
  fix.position = trilaterate(anchors, ranges);
  fix.position.x += rng.normal(noise.sigma_fix_x);
  fix.position.y += rng.normal(noise.sigma_fix_y);
  fix.covariance << noise.sigma_fix_x * noise.sigma_fix_x, 0.0,
      0.0, noise.sigma_fix_y * noise.sigma_fix_y;
  return fix;
}

ImuReading measure_imu(const MotionState& true_state, const SensorNoise& noise, Rng& rng) {
  ImuReading reading;
  reading.v = std::max(0.0, true_state.v + rng.normal(noise.sigma_imu_v));
  reading.theta = wrap_angle(true_state.theta + rng.normal(noise.sigma_imu_theta));
  return reading;
}

}  // namespace safenav
