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

#ifndef SAFENAV_WORLD_HPP_
#define SAFENAV_WORLD_HPP_

#include <cstdint>
#include <vector>

#include "safenav/geometry.hpp"
#include "safenav/motion_model.hpp"

namespace safenav {

struct Landmark {
  int id = 0;
  Point2 position;
  int cluster_id = 0;
};

struct LandmarkCluster {
  int id = 0;
  std::vector<int> member_ids;
  Point2 centroid;
};

struct Circle {
  Point2 center;
  double radius = 0.0;
};

// Obstacles block motion; hazards are carried for reporting only.
struct ObstacleMap {
  std::vector<Circle> obstacles;
  std::vector<Circle> hazards;
};

struct Bounds {
  double width = 200.0;
  double height = 200.0;

  bool contains(Point2 p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
  }
};

class World {
 public:
  World() = default;
  // Groups landmarks into clusters and validates the invariants: unique
  // ids, everything inside the bounds, clusters of at least three members.
  World(Bounds bounds, std::vector<Landmark> landmarks, ObstacleMap obstacle_map,
        TerrainModel terrain, std::uint64_t seed);

  const Bounds& bounds() const { return bounds_; }
  const std::vector<Landmark>& landmarks() const { return landmarks_; }
  const std::vector<LandmarkCluster>& clusters() const { return clusters_; }
  const ObstacleMap& obstacle_map() const { return obstacle_map_; }
  const TerrainModel& terrain() const { return terrain_; }
  std::uint64_t seed() const { return seed_; }

  const Landmark& landmark(int id) const;
  // nullptr when no cluster has that id.
  const LandmarkCluster* find_cluster(int id) const;

 private:
  Bounds bounds_;
  std::vector<Landmark> landmarks_;
  std::vector<LandmarkCluster> clusters_;
  ObstacleMap obstacle_map_;
  TerrainModel terrain_;
  std::uint64_t seed_ = 0;
};

}  // namespace safenav

#endif  // SAFENAV_WORLD_HPP_
