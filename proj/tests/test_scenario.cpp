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
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "safenav/error.hpp"
#include "safenav/scenario.hpp"

#ifndef SAFENAV_DATA_DIR
#define SAFENAV_DATA_DIR "data"
#endif

namespace safenav {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GenSynthetic, ManoeuvreProfile) {
  const SyntheticTrajectory tr = gen_synthetic(400, 1);
  ASSERT_EQ(tr.records.size(), 400u);
  const auto& r = tr.records;
  const double accel0 = std::hypot(r[0].a_x, r[0].a_y);
  EXPECT_NEAR(accel0, 0.0, 1e-12);
  EXPECT_NEAR(r[0].theta, 0.0, 1e-12);
  // T = 20 s: T/8 is step 50 and T/4 is step 100.
  EXPECT_NEAR(r[50].a_x * std::cos(r[50].theta) + r[50].a_y * std::sin(r[50].theta), 3.0, 1e-12);
  EXPECT_NEAR(r[100].theta, kPi / 2, 1e-12);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(r[i].t, i * 0.05, 1e-12);
    EXPECT_NEAR(r[i].theta, kPi / 2 * std::sin(2 * kPi * r[i].t / 20.0), 1e-12);
    EXPECT_GE(r[i].speed(), 0.0);
  }
}

TEST(GenSynthetic, PositionsFollowSpeedAndHeading) {
  const SyntheticTrajectory tr = gen_synthetic(200, 2, 0.1, {10, 10}, 1.0);
  const auto& r = tr.records;
  EXPECT_LE(std::hypot(r[0].p_x - 10, r[0].p_y - 10), 1.0);
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double c = std::cos(r[i - 1].theta);
    const double s = std::sin(r[i - 1].theta);
    EXPECT_NEAR(r[i].p_x - r[i - 1].p_x, r[i].speed() * c * 0.1, 1e-12);
    EXPECT_NEAR(r[i].p_y - r[i - 1].p_y, r[i].speed() * s * 0.1, 1e-12);
  }
}

TEST(GenSynthetic, RejectsBadInput) {
  EXPECT_THROW(gen_synthetic(1, 0), ValidationError);
  EXPECT_THROW(gen_synthetic(10, 0, 0.0), ValidationError);
}

TEST(GenWorld, DeterministicAndInBounds) {
  const World a = gen_world(5);
  const World b = gen_world(5);
  ASSERT_EQ(a.obstacle_map().obstacles.size(), 25u);
  ASSERT_EQ(a.obstacle_map().hazards.size(), 25u);
  EXPECT_EQ(a.clusters().size(), 7u);
  for (std::size_t i = 0; i < 25; ++i) {
    EXPECT_EQ(a.obstacle_map().obstacles[i].center, b.obstacle_map().obstacles[i].center);
    EXPECT_EQ(a.obstacle_map().hazards[i].radius, b.obstacle_map().hazards[i].radius);
  }
  for (const Circle& c : a.obstacle_map().obstacles) {
    EXPECT_TRUE(a.bounds().contains(c.center));
    EXPECT_GE(c.radius, 2.0);
    EXPECT_LE(c.radius, 5.0);
    for (const LandmarkCluster& cl : a.clusters()) {
      EXPECT_GT(distance(cl.centroid, c.center), c.radius + 5.0);
    }
  }
  for (const Circle& h : a.obstacle_map().hazards) {
    EXPECT_GE(h.radius, 3.0);
    EXPECT_LE(h.radius, 8.0);
  }
  for (const Landmark& l : a.landmarks()) EXPECT_TRUE(a.bounds().contains(l.position));
  const World c = gen_world(6);
  EXPECT_NE(a.obstacle_map().obstacles[0].center, c.obstacle_map().obstacles[0].center);
}

TEST(GenWorld, ExhaustedBudgetRaises) {
  Bounds tiny{8, 8};
  EXPECT_THROW(gen_world(1, 5, 0, {{1, {4, 4}, 3, 1.0}}, tiny), GenerationError);
}

TEST(GroundTruthPath, Examples) {
  const World w = gen_world(3);
  const Polyline p = build_ground_truth_path(w, {6, 5, 3});
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.front(), w.find_cluster(6)->centroid);
  EXPECT_EQ(p.back(), w.find_cluster(3)->centroid);
  EXPECT_THROW(build_ground_truth_path(w, {1, 2, 1}), ValidationError);
  EXPECT_THROW(build_ground_truth_path(w, {1, 99}), ValidationError);
  EXPECT_THROW(build_ground_truth_path(w, {1}), ValidationError);
}

TEST(DefaultScenario, PathsShareTheGoal) {
  const Scenario s = default_scenario(42);
  EXPECT_NO_THROW(s.validate());
  ASSERT_EQ(s.paths.size(), 3u);
  const Point2 goal = s.world.find_cluster(3)->centroid;
  for (const char* name : {"P1", "P2", "P3"}) {
    EXPECT_EQ(s.central_path(name).back(), goal) << name;
  }
  EXPECT_THROW(s.path("P4"), ValidationError);
}

TEST(DefaultScenario, SafePathZones) {
  const Scenario s = default_scenario(42);
  const SafePathBuffer b = s.safe_path("P2");
  EXPECT_EQ(b.segments().size(), 10u);
  const auto& z = b.zones();
  ASSERT_EQ(z.zone_bounds.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(z.zone_bounds[i].first, 2.5 * i);
    EXPECT_DOUBLE_EQ(z.zone_bounds[i].second, 2.5 * (i + 1));
    EXPECT_DOUBLE_EQ(z.zone_weights[i], 2.0 * (i + 1));
  }
}

TEST(ScenarioJson, RoundTrip) {
  const Scenario s = default_scenario(7);
  const std::string text = scenario_to_json(s);
  const Scenario back = scenario_from_json(text);
  EXPECT_EQ(scenario_to_json(back), text);
  EXPECT_EQ(back.seed, 7u);
  EXPECT_EQ(back.world.landmarks().size(), s.world.landmarks().size());
}

TEST(ScenarioJson, RejectsUnknownAndMalformed) {
  nlohmann::json j = nlohmann::json::parse(scenario_to_json(default_scenario(7)));
  j["surprise"] = 1;
  EXPECT_THROW(scenario_from_json(j.dump()), ValidationError);
  EXPECT_THROW(scenario_from_json("{not json"), ValidationError);
  EXPECT_THROW(scenario_from_json("[]"), ValidationError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ValidationError);
}

TEST(ScenarioJson, BundledFileMatchesGenerator) {
  std::ifstream in(std::string(SAFENAV_DATA_DIR) + "/default_scenario.json");
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(scenario_to_json(scenario_from_json(ss.str())),
            scenario_to_json(default_scenario(42)));
}

TEST(Scenario, FilterConfigDefaults) {
  Scenario s = default_scenario(42);
  const FilterConfig fc = s.filter_config(0.1);
  EXPECT_GT(fc.R(0, 0), 0.0);
  EXPECT_GT(fc.Q(0, 0), 0.0);
  s.filter.R = Eigen::Matrix2d::Identity() * 0.5;
  EXPECT_DOUBLE_EQ(s.filter_config(0.1).R(1, 1), 0.5);
}

}  // namespace
}  // namespace safenav
