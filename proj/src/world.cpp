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

#include "safenav/world.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "safenav/error.hpp"

namespace safenav {

World::World(Bounds bounds, std::vector<Landmark> landmarks, ObstacleMap obstacle_map,
             TerrainModel terrain, std::uint64_t seed)
    : bounds_(bounds),
      landmarks_(std::move(landmarks)),
      obstacle_map_(std::move(obstacle_map)),
      terrain_(std::move(terrain)),
      seed_(seed) {
  if (!(bounds_.width > 0.0 && bounds_.height > 0.0)) {
    throw ValidationError("world bounds must be positive");
  }
  std::set<int> ids;
  std::map<int, std::vector<int>> members;
  for (const Landmark& lm : landmarks_) {
    if (!ids.insert(lm.id).second) {
      throw ValidationError("duplicate landmark id " + std::to_string(lm.id));
    }
    if (!bounds_.contains(lm.position)) {
      throw ValidationError("landmark " + std::to_string(lm.id) + " outside world bounds");
    }
    members[lm.cluster_id].push_back(lm.id);
  }
  for (const auto* list : {&obstacle_map_.obstacles, &obstacle_map_.hazards}) {
    for (const Circle& c : *list) {
      if (!(c.radius > 0.0)) throw ValidationError("obstacle and hazard radii must be > 0");
      if (!bounds_.contains(c.center)) {
        throw ValidationError("obstacle or hazard centre outside world bounds");
      }
    }
  }
  for (auto& [cluster_id, ids_in_cluster] : members) {
    if (ids_in_cluster.size() < 3) {
      throw ValidationError("cluster " + std::to_string(cluster_id) +
                            " has fewer than three landmarks");
    }
    std::vector<Point2> pts;
    for (int id : ids_in_cluster) pts.push_back(landmark(id).position);
    clusters_.push_back({cluster_id, ids_in_cluster, centroid(pts)});
  }
}

const Landmark& World::landmark(int id) const {
  const auto it = std::find_if(landmarks_.begin(), landmarks_.end(),
                               [id](const Landmark& lm) { return lm.id == id; });
  if (it == landmarks_.end()) throw ValidationError("unknown landmark id " + std::to_string(id));
  return *it;
}

const LandmarkCluster* World::find_cluster(int id) const {
  const auto it = std::find_if(clusters_.begin(), clusters_.end(),
                               [id](const LandmarkCluster& c) { return c.id == id; });
  return it == clusters_.end() ? nullptr : &*it;
}

}  // namespace safenav
