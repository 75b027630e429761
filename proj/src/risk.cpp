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

#include "safenav/risk.hpp"

#include <algorithm>
#include <cmath>

#include "safenav/error.hpp"

namespace safenav {

void RiskZoneConfig::validate() const {
  if (zone_bounds.empty() || zone_bounds.size() != zone_weights.size()) {
    throw ValidationError("zone bounds and weights must be non-empty and equally sized");
  }
  if (zone_bounds.front().first != 0.0) throw ValidationError("first zone must start at 0");
  for (std::size_t j = 0; j < zone_bounds.size(); ++j) {
    if (!(zone_bounds[j].second > zone_bounds[j].first)) {
      throw ValidationError("zone bounds must be ascending");
    }
    if (j > 0 && zone_bounds[j].first != zone_bounds[j - 1].second) {
      throw ValidationError("zone bounds must be contiguous");
    }
    if (!(zone_weights[j] > 0.0) || (j > 0 && zone_weights[j] <= zone_weights[j - 1])) {
      throw ValidationError("zone weights must be positive and ascending");
    }
  }
  if (std::abs(zone_bounds.back().second - d_max) > 1e-12) {
    throw ValidationError("zones must end at d_max");
  }
  if (!(w_max > 0.0)) throw ValidationError("w_max must be positive");
}

RiskZoneConfig RiskZoneConfig::equal_width(double d_max, std::vector<double> weights,
                                           RiskMode mode) {
  if (!(d_max > 0.0)) throw ValidationError("buffer half-width must be positive");
  if (weights.empty()) throw ValidationError("at least one zone weight is required");
  RiskZoneConfig cfg;
  const auto n = static_cast<double>(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double a = d_max * static_cast<double>(j) / n;
    const double b = j + 1 == weights.size() ? d_max : d_max * static_cast<double>(j + 1) / n;
    cfg.zone_bounds.emplace_back(a, b);
  }
  cfg.w_max = weights.back();
  cfg.zone_weights = std::move(weights);
  cfg.d_max = d_max;
  cfg.mode = mode;
  cfg.validate();
  return cfg;
}

double wrs(double d, const RiskZoneConfig& zones) {
  const double ad = std::abs(d);
  auto score = [&](double dev, double w) {
    return zones.mode == RiskMode::kDivide ? dev * (dev / w) : dev * (dev * w);
  };
  if (ad >= zones.d_max) return score(zones.d_max, zones.w_max);
  for (std::size_t j = 0; j < zones.zone_bounds.size(); ++j) {
    if (ad >= zones.zone_bounds[j].first && ad < zones.zone_bounds[j].second) {
      return score(ad, zones.zone_weights[j]);
    }
  }
  return score(zones.d_max, zones.w_max);
}

SafePathBuffer::SafePathBuffer(Polyline central, double half_width,
                               std::vector<Polyline> segments, RiskZoneConfig zones)
    : central_(std::move(central)),
      half_width_(half_width),
      segments_(std::move(segments)),
      zones_(std::move(zones)) {
  if (!(half_width_ > 0.0)) throw ValidationError("buffer half-width must be positive");
  if (segments_.empty()) throw ValidationError("buffer needs at least one segment");
  zones_.validate();
}

double SafePathBuffer::deviation(Point2 p) const {
  return closest_point_on_polyline(p, central_).distance;
}

SafePathBuffer build_safe_path(const Polyline& central, double half_width, int segments,
                               std::vector<double> zone_weights, RiskMode mode) {
  if (zone_weights.size() != 4) throw ValidationError("the buffer uses four risk zones");
  RiskZoneConfig zones = RiskZoneConfig::equal_width(half_width, std::move(zone_weights), mode);
  return SafePathBuffer(central, half_width, split_polyline(central, segments),
                        std::move(zones));
}

double awrs(std::span<const Point2> trajectory, const SafePathBuffer& buffer) {
  if (trajectory.empty()) throw ValidationError("awrs needs a non-empty trajectory");
  double sum = 0.0;
  for (Point2 p : trajectory) sum += buffer.wrs_at(p);
  return sum / static_cast<double>(trajectory.size());
}

double ade(std::span<const Point2> estimate, std::span<const Point2> truth) {
  if (estimate.empty() || estimate.size() != truth.size()) {
    throw ValidationError("ade needs equally sized non-empty trajectories");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) sum += distance(estimate[i], truth[i]);
  return sum / static_cast<double>(estimate.size());
}

double fde(std::span<const Point2> estimate, std::span<const Point2> truth) {
  if (estimate.empty() || truth.empty()) throw ValidationError("fde needs non-empty trajectories");
  return distance(estimate.back(), truth.back());
}

double percent_error(double estimated_length, double true_length) {
  if (!(true_length > 0.0)) throw ValidationError("true path length must be positive");
  return std::abs(estimated_length - true_length) / true_length * 100.0;
}

TrajectoryMetrics evaluate_trajectory(std::span<const Point2> estimate,
                                      std::span<const Point2> truth,
                                      const SafePathBuffer& buffer, std::size_t samples) {
  const std::vector<Point2> est = resample_by_arc_length(estimate, samples);
  const std::vector<Point2> ref = resample_by_arc_length(truth, samples);
  TrajectoryMetrics m;
  m.ade = ade(est, ref);
  m.fde = fde(est, ref);
  m.awrs = awrs(est, buffer);
  m.trajectory_length = path_length(estimate);
  m.percent_error = percent_error(m.trajectory_length, path_length(truth));
  return m;
}

}  // namespace safenav
