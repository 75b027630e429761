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

#ifndef SAFENAV_LOCALIZATION_HPP_
#define SAFENAV_LOCALIZATION_HPP_

#include <span>

#include <Eigen/Core>

#include "safenav/geometry.hpp"
#include "safenav/motion_model.hpp"
#include "safenav/random.hpp"
#include "safenav/world.hpp"

namespace safenav {

struct PositionFix {
  Point2 position;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
};

// Knobs of the simulated landmark localizer and IMU. The fix sigmas default
// to the per-axis RMSE of the landmark-based localizer being emulated.
struct SensorNoise {
  double sigma_range = 0.001;
  double sigma_fix_x = 0.0142;
  double sigma_fix_y = 0.039;
  double sigma_imu_v = 0.05;
  double sigma_imu_theta = 0.01;
  double detect_range = 60.0;

  void validate() const;
};

struct ImuReading {
  double v = 0.0;
  double theta = 0.0;
};

// Least-squares position from ranges to three or more anchors: the linear
// system obtained by subtracting the first anchor's circle equation, then
// Gauss-Newton refinement on the range residuals.
// Throws IllConditionedError for (near-)collinear anchors and
// ConvergenceError if the refinement does not settle.
Point2 trilaterate(std::span<const Point2> anchors, std::span<const double> distances);

Point2 trilaterate(std::span<const Landmark> anchors, std::span<const double> distances);

// Simulated landmark fix: nearest cluster with >= 3 members within
// detect_range, noisy ranges, trilateration, then per-axis fix noise.
// Throws LocalizationUnavailable when no cluster qualifies.
PositionFix measure_position(Point2 true_pos, const World& world, const SensorNoise& noise,
                             Rng& rng);

ImuReading measure_imu(const MotionState& true_state, const SensorNoise& noise, Rng& rng);

}  // namespace safenav

#endif  // SAFENAV_LOCALIZATION_HPP_
