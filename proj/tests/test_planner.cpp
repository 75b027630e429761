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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "safenav/error.hpp"
#include "safenav/planner.hpp"
#include "safenav/random.hpp"
#include "safenav/risk.hpp"

namespace safenav {
namespace {

SafePathBuffer line_buffer(Point2 a, Point2 b) {
  return build_safe_path(Polyline({a, b}), 10.0, 10);
}

TEST(CollisionFree, Examples) {
  EXPECT_TRUE(collision_free({0, 0}, {10, 0}, ObstacleMap{}));
  ObstacleMap m;
  m.obstacles.push_back({{5, 1}, 2});
  EXPECT_FALSE(collision_free({0, 0}, {10, 0}, m));
  m.obstacles[0].radius = 0.5;
  EXPECT_TRUE(collision_free({0, 0}, {10, 0}, m));
}

TEST(CollisionFree, HazardsNeverBlock) {
  ObstacleMap m;
  m.hazards.push_back({{5, 0}, 3});
  EXPECT_TRUE(collision_free({0, 0}, {10, 0}, m));
}

TEST(CollisionFree, TangentSegmentBlocks) {
  ObstacleMap m;
  m.obstacles.push_back({{5, 1}, 1});
  EXPECT_FALSE(collision_free({0, 0}, {10, 0}, m));
}

TEST(PathCost, Examples) {
  const Polyline central({{0, 0}, {10, 0}});
  const RiskZoneConfig zones = RiskZoneConfig::equal_width(10, {2, 4, 6, 8});
  PlannerConfig cfg;
  cfg.alpha = 1.5;
  const std::vector<Point2> on{{0, 0}, {4, 0}, {10, 0}};
  PathCost c = path_cost(on, central, zones, cfg);
  EXPECT_DOUBLE_EQ(c.risk, 0.0);
  EXPECT_DOUBLE_EQ(c.total, 1.5 * 10.0);

  const std::vector<Point2> off{{0, 0}, {3, 1}, {6, 3}};
  cfg.alpha = 1.0;
  c = path_cost(off, central, zones, cfg);
  EXPECT_DOUBLE_EQ(c.risk, 2.75);
  EXPECT_DOUBLE_EQ(c.length, std::sqrt(10.0) + std::sqrt(13.0));
  EXPECT_DOUBLE_EQ(c.total, c.length + 2.75);

  cfg.beta = 0.0;
  c = path_cost(off, central, zones, cfg);
  EXPECT_DOUBLE_EQ(c.total, c.length);
}

TEST(Plan, StartAtGoal) {
  const SafePathBuffer b = line_buffer({0, 0}, {50, 0});
  Rng rng(1);
  const PlanResult r = plan({10, 0}, {10, 0}, ObstacleMap{}, b, PlannerConfig{}, rng);
  ASSERT_EQ(r.path.size(), 1u);
  EXPECT_DOUBLE_EQ(r.total_cost, 0.0);
}

TEST(Plan, StartInsideObstacleRejected) {
  const SafePathBuffer b = line_buffer({0, 0}, {50, 0});
  ObstacleMap m;
  m.obstacles.push_back({{0, 0}, 2});
  Rng rng(1);
  EXPECT_THROW(plan({0, 0}, {50, 0}, m, b, PlannerConfig{}, rng), ValidationError);
}

TEST(Plan, NearStraightOnEmptyMap) {
  const Point2 s{0, 0};
  const Point2 g{60, 20};
  const SafePathBuffer b = line_buffer(s, g);
  PlannerConfig cfg;
  cfg.beta = 0.0;
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const PlanResult r = plan(s, g, ObstacleMap{}, b, cfg, rng);
    if (path_length(r.path) <= 1.05 * distance(s, g)) ++good;
  }
  EXPECT_GE(good, 18);
}

TEST(Plan, ThreadsTheGapInAWall) {
  ObstacleMap m;
  for (double y = -20; y <= 20; y += 2.0) {
    if (std::abs(y - 6.0) < 3.0) continue;  // gap around y = 6
    m.obstacles.push_back({{30, y}, 1.2});
  }
  const Point2 s{0, 0};
  const Point2 g{60, 0};
  const SafePathBuffer b = line_buffer(s, g);
  PlannerConfig cfg;
  cfg.max_iterations = 4000;
  Rng rng(3);
  const PlanResult r = plan(s, g, m, b, cfg, rng);
  bool crossed_in_gap = false;
  for (std::size_t i = 1; i < r.path.size(); ++i) {
    const Point2 a = r.path[i - 1];
    const Point2 c = r.path[i];
    EXPECT_TRUE(collision_free(a, c, m));
    if ((a.x - 30) * (c.x - 30) <= 0 && a.x != c.x) {
      const double y = a.y + (30 - a.x) * (c.y - a.y) / (c.x - a.x);
      crossed_in_gap = crossed_in_gap || (y > 3.0 && y < 9.0);
    }
  }
  EXPECT_TRUE(crossed_in_gap);
  EXPECT_LE(distance(r.path.back(), g), cfg.goal_radius + 1e-9);
}

TEST(Plan, TreeCostsConsistent) {
  ObstacleMap m;
  m.obstacles.push_back({{25, 2}, 4});
  m.obstacles.push_back({{40, -3}, 3});
  const SafePathBuffer b = line_buffer({0, 0}, {60, 0});
  PlannerConfig cfg;
  cfg.beta = 2.0;
  Rng rng(4);
  const PlanResult r = plan({0, 0}, {60, 0}, m, b, cfg, rng);
  EXPECT_NEAR(r.tree[0].cost, cfg.beta * b.wrs_at({0, 0}), 1e-12);
  for (std::size_t i = 1; i < r.tree.size(); ++i) {
    const PlanNode& n = r.tree[i];
    ASSERT_GE(n.parent, 0);
    const PlanNode& p = r.tree[n.parent];
    EXPECT_NEAR(n.cost, p.cost + n.increment, 1e-9);
    const double expect_inc = cfg.alpha * distance(p.point, n.point) + cfg.beta * b.wrs_at(n.point);
    EXPECT_NEAR(n.increment, expect_inc, 1e-9);
  }
  EXPECT_NEAR(r.total_cost, cfg.alpha * r.length_cost + cfg.beta * r.risk_cost, 1e-9);
  const PathCost pc = path_cost(r.path, b.central(), b.zones(), cfg);
  EXPECT_NEAR(pc.total, r.total_cost, 1e-9);
}

TEST(Plan, BestCostNeverIncreases) {
  const SafePathBuffer b = line_buffer({0, 0}, {50, 30});
  Rng rng(5);
  const PlanResult r = plan({0, 0}, {50, 30}, ObstacleMap{}, b, PlannerConfig{}, rng);
  double prev = std::numeric_limits<double>::infinity();
  for (double c : r.best_cost_history) {
    EXPECT_LE(c, prev);
    prev = c;
  }
  EXPECT_EQ(r.best_cost_history.size(), static_cast<std::size_t>(r.iterations_used));
}

TEST(Plan, ZeroBetaCostIsPathLength) {
  ObstacleMap m;
  m.obstacles.push_back({{20, 0}, 3});
  m.hazards.push_back({{30, 5}, 4});
  const SafePathBuffer b = line_buffer({0, 0}, {50, 0});
  PlannerConfig cfg;
  cfg.beta = 0.0;
  Rng rng(6);
  const PlanResult r = plan({0, 0}, {50, 0}, m, b, cfg, rng);
  EXPECT_NEAR(r.total_cost, path_length(r.path), 1e-9);
}

TEST(Plan, FailsWhenGoalIsWalledOff) {
  ObstacleMap m;
  for (int k = 0; k < 16; ++k) {
    const double a = 2.0 * M_PI * k / 16;
    m.obstacles.push_back({{50 + 5 * std::cos(a), 5 * std::sin(a)}, 1.5});
  }
  const SafePathBuffer b = line_buffer({0, 0}, {50, 0});
  PlannerConfig cfg;
  cfg.max_iterations = 300;
  Rng rng(7);
  try {
    plan({0, 0}, {50, 0}, m, b, cfg, rng);
    FAIL() << "expected PlanningFailed";
  } catch (const PlanningFailed& e) {
    EXPECT_TRUE(std::isfinite(e.best_partial_cost()));
  }
}

TEST(Plan, GoalInsideObstacleRejected) {
  ObstacleMap m;
  m.obstacles.push_back({{50, 0}, 3});
  const SafePathBuffer b = line_buffer({0, 0}, {50, 0});
  Rng rng(7);
  EXPECT_THROW(plan({0, 0}, {50, 0}, m, b, PlannerConfig{}, rng), ValidationError);
}

TEST(Plan, Deterministic) {
  const SafePathBuffer b = line_buffer({0, 0}, {40, 10});
  Rng a(8), c(8);
  const PlanResult r1 = plan({0, 0}, {40, 10}, ObstacleMap{}, b, PlannerConfig{}, a);
  const PlanResult r2 = plan({0, 0}, {40, 10}, ObstacleMap{}, b, PlannerConfig{}, c);
  EXPECT_EQ(r1.path, r2.path);
  EXPECT_EQ(r1.total_cost, r2.total_cost);
}

TEST(PlannerConfig, Validation) {
  PlannerConfig cfg;
  cfg.step_size = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = PlannerConfig{};
  cfg.beta = -1;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

}  // namespace
}  // namespace safenav
