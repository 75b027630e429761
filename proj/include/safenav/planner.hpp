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

#ifndef SAFENAV_PLANNER_HPP_
#define SAFENAV_PLANNER_HPP_

#include <span>
#include <vector>

#include "safenav/geometry.hpp"
#include "safenav/random.hpp"
#include "safenav/risk.hpp"
#include "safenav/world.hpp"

namespace safenav {

struct PlannerConfig {
  double alpha = 1.0;
  double beta = 1.0;
  int max_iterations = 2000;
  double step_size = 2.0;
  double goal_radius = 1.0;
  double rewire_radius = 5.0;
  double goal_bias = 0.05;
  // 0 scores risk at tree nodes only; k > 0 also adds k interior samples per edge.
  int edge_risk_samples = 0;

  void validate() const;
};

struct PlanNode {
  Point2 point;
  int parent = -1;
  double cost = 0.0;       // accumulated total cost from the root
  double increment = 0.0;  // cost added by the edge from the parent
  std::vector<int> children;
};

struct PlanResult {
  std::vector<Point2> path;
  double total_cost = 0.0;
  double length_cost = 0.0;
  double risk_cost = 0.0;
  int iterations_used = 0;
  std::vector<PlanNode> tree;
  std::vector<double> best_cost_history;  // best goal-reaching cost per iteration
};

// True iff the segment stays strictly farther than the radius from every
// obstacle centre. Hazards never block.
bool collision_free(Point2 p1, Point2 p2, const ObstacleMap& map);

struct PathCost {
  double total = 0.0;
  double length = 0.0;
  double risk = 0.0;
};

// Length is the sum of edge lengths, risk the sum of WRS over the path points
// (plus interior edge samples when edge_risk_samples > 0).
PathCost path_cost(std::span<const Point2> path, const Polyline& central,
                   const RiskZoneConfig& zones, const PlannerConfig& cfg);

// Risk-aware RRT*. Risk is measured against the buffer's central line.
// Samples are drawn uniformly within 2W of `sampling_line` (the central line
// when null). Throws PlanningFailed when no node gets within goal_radius.
PlanResult plan(Point2 start, Point2 goal, const ObstacleMap& map,
                const SafePathBuffer& buffer, const PlannerConfig& cfg, Rng& rng,
                const Polyline* sampling_line = nullptr);

}  // namespace safenav

#endif  // SAFENAV_PLANNER_HPP_
