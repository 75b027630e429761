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

#ifndef SAFENAV_NAVIGATOR_HPP_
#define SAFENAV_NAVIGATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "safenav/filters.hpp"
#include "safenav/geometry.hpp"
#include "safenav/localization.hpp"
#include "safenav/motion_model.hpp"
#include "safenav/planner.hpp"
#include "safenav/risk.hpp"
#include "safenav/world.hpp"

namespace safenav {

enum class NavMethod { kChull, kCentroid };
enum class NavOutcome { kReached, kAborted, kStepLimit };

std::string to_string(NavMethod method);
std::string to_string(NavOutcome outcome);
std::string to_string(FilterKind kind);
NavMethod parse_method(const std::string& name);
FilterKind parse_filter(const std::string& name);

struct NavConfig {
  NavMethod method = NavMethod::kCentroid;
  double speed = 2.0;  // cruise speed of the default command
  int subsegments_per_segment = 5;
  double lookahead = 3.0;
  double obstacle_check_radius = 6.0;
  double clearance = 1.0;
  int max_steps = 5000;
  double goal_radius = 0.3;
  int max_replans = 20;
  int max_back_steps = 3;

  ControlInput default_command() const { return {speed, 0.0}; }
  void validate() const;
};

// Command that keeps the current speed and turns toward `to`. Returns the
// zero command when `to` coincides with the current position.
ControlInput compute_control_input(const MotionState& from, Point2 to, const MotionLimits& lim);

// Hull of each segment dilated by the buffer half-width W (a 16-gon of
// radius W around every segment vertex).
std::vector<ConvexPolygon> segment_hulls(const SafePathBuffer& buffer);

struct StepDecision {
  Point2 next;
  ControlInput u;
};

// Convex-hull safety check. The look-ahead point is the next trajectory
// point of the segment; each time one is reached a desired heading toward the
// following one is set, the entity turns until aligned and then runs on the
// default command (cruise speed, no turn). If the
// predicted step leaves both the current and the next hull the heading is
// re-aimed at the path ahead; if that step is still outside, the entity steps
// back toward the last confirmed position. More than max_back_steps in a row
// aborts.
class ChullTracker {
 public:
  ChullTracker(const SafePathBuffer& buffer, const NavConfig& cfg, const MotionLimits& lim,
               const TerrainModel& terrain);

  StepDecision step(const MotionState& estimate);
  // Re-derives the segment index from arc length, e.g. after a detour.
  void resync(const MotionState& estimate);

  // Turn toward the desired heading while a turn is pending, else the
  // configured default command.
  ControlInput default_command(const MotionState& estimate) const;
  double desired_heading() const { return heading_goal_; }
  std::size_t segment_index() const { return segment_; }
  int consecutive_back_steps() const { return back_steps_; }
  int total_back_steps() const { return total_back_steps_; }
  const std::vector<ConvexPolygon>& hulls() const { return hulls_; }

 private:
  bool in_hull(std::size_t index, Point2 p) const;
  bool accept(Point2 p, Point2 next);
  void aim(Point2 p);
  ControlInput take_command(const MotionState& estimate);
  Point2 ahead_target(Point2 p) const;

  const SafePathBuffer& buffer_;
  NavConfig cfg_;
  MotionLimits lim_;
  const TerrainModel& terrain_;
  std::vector<ConvexPolygon> hulls_;
  struct Waypoint {
    Point2 point;
    double arc = 0.0;
    std::size_t segment = 0;
  };

  std::vector<Point2> segment_centroids_;
  std::vector<Waypoint> waypoints_;  // segment trajectory points in path order
  std::size_t waypoint_ = 0;
  std::size_t segment_ = 0;
  bool started_ = false;
  double heading_goal_ = 0.0;
  bool turning_ = false;
  Point2 confirmed_;
  int back_steps_ = 0;
  int total_back_steps_ = 0;
};

// Nearest-centroid steering over sub-segment centroids. Steps leaving the
// buffer are counted, not rejected.
class CentroidTracker {
 public:
  CentroidTracker(const SafePathBuffer& buffer, const NavConfig& cfg, const MotionLimits& lim,
                  const TerrainModel& terrain);

  StepDecision step(const MotionState& estimate);
  void resync(const MotionState& estimate) { consume(estimate.position); }

  std::size_t segment_index() const { return segment_; }
  int buffer_violations() const { return violations_; }
  const std::vector<std::vector<Point2>>& centroids() const { return centroids_; }
  bool visited(std::size_t segment, std::size_t sub) const { return visited_[segment][sub]; }

 private:
  void consume(Point2 p);

  const SafePathBuffer& buffer_;
  NavConfig cfg_;
  MotionLimits lim_;
  const TerrainModel& terrain_;
  std::vector<std::vector<Point2>> centroids_;
  std::vector<std::vector<double>> arc_;
  std::vector<std::vector<bool>> visited_;
  std::size_t segment_ = 0;
  int violations_ = 0;
};

struct NavRecord {
  std::vector<Point2> predicted;       // method's predicted next position per step
  std::vector<MotionState> estimates;  // filter state after each update
  std::vector<Point2> measured;        // estimate positions
  std::vector<MotionState> truth;
  std::vector<Point2> fixes;
  std::vector<ControlInput> controls;
  std::vector<std::vector<Point2>> detours;
  int replans = 0;
  int back_steps = 0;
  int buffer_violations = 0;
  int degeneracy_events = 0;
  double mean_step_ms = 0.0;
  NavOutcome outcome = NavOutcome::kAborted;
  std::string abort_reason;
};

struct NavContext {
  const World* world = nullptr;
  const SafePathBuffer* buffer = nullptr;
  MotionLimits limits;
  NoiseParams process_noise;
  SensorNoise sensor_noise;
  FilterConfig filter;
  FilterKind filter_kind = FilterKind::kEkf;
  PlannerConfig planner;
  NavConfig nav;
};

// Closed-loop run along the buffer: safety-checked step, obstacle detours
// via the risk-aware planner, noisy motion, landmark fix, filter update.
// All randomness is derived from trial_seed.
NavRecord navigate(const MotionState& start, const NavContext& ctx, std::uint64_t trial_seed);

}  // namespace safenav

#endif  // SAFENAV_NAVIGATOR_HPP_
