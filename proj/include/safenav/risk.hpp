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

#ifndef SAFENAV_RISK_HPP_
#define SAFENAV_RISK_HPP_

#include <span>
#include <utility>
#include <vector>

#include "safenav/geometry.hpp"

namespace safenav {

// kDivide scores |d|^2 / w_j. kMultiply is the alternative |d|^2 * w_j
// reading where outer zones weigh more per metre.
enum class RiskMode { kDivide, kMultiply };

struct RiskZoneConfig {
  std::vector<std::pair<double, double>> zone_bounds;  // [a_j, b_j)
  std::vector<double> zone_weights{2.0, 4.0, 6.0, 8.0};
  double d_max = 10.0;
  double w_max = 8.0;
  RiskMode mode = RiskMode::kDivide;

  void validate() const;

  // Equal-width zones over [0, d_max]; w_max is the last weight.
  static RiskZoneConfig equal_width(double d_max, std::vector<double> weights,
                                    RiskMode mode = RiskMode::kDivide);
};

double wrs(double d, const RiskZoneConfig& zones);

class SafePathBuffer {
 public:
  SafePathBuffer(Polyline central, double half_width, std::vector<Polyline> segments,
                 RiskZoneConfig zones);

  const Polyline& central() const { return central_; }
  double half_width() const { return half_width_; }
  const std::vector<Polyline>& segments() const { return segments_; }
  const RiskZoneConfig& zones() const { return zones_; }

  double deviation(Point2 p) const;
  bool contains(Point2 p) const { return deviation(p) <= half_width_; }
  double wrs_at(Point2 p) const { return wrs(deviation(p), zones_); }

 private:
  Polyline central_;
  double half_width_;
  std::vector<Polyline> segments_;
  RiskZoneConfig zones_;
};

// Four equal zones of W/4 per side, d_max = W.
SafePathBuffer build_safe_path(const Polyline& central, double half_width, int segments,
                               std::vector<double> zone_weights = {2.0, 4.0, 6.0, 8.0},
                               RiskMode mode = RiskMode::kDivide);

// Mean WRS of the points, deviations measured against the buffer's central line.
double awrs(std::span<const Point2> trajectory, const SafePathBuffer& buffer);

// Point-by-point errors; both inputs must have the same count.
double ade(std::span<const Point2> estimate, std::span<const Point2> truth);
double fde(std::span<const Point2> estimate, std::span<const Point2> truth);

double percent_error(double estimated_length, double true_length);

struct TrajectoryMetrics {
  double ade = 0.0;
  double fde = 0.0;
  double awrs = 0.0;
  double percent_error = 0.0;
  double mean_step_runtime = 0.0;  // ms
  double trajectory_length = 0.0;
};

// Both trajectories are resampled by arc length to `samples` points before
// ADE/FDE; AWRS runs over the resampled estimate. Percent error compares
// path lengths.
TrajectoryMetrics evaluate_trajectory(std::span<const Point2> estimate,
                                      std::span<const Point2> truth,
                                      const SafePathBuffer& buffer,
                                      std::size_t samples = 200);

}  // namespace safenav

#endif  // SAFENAV_RISK_HPP_
