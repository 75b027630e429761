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

#include "safenav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "safenav/error.hpp"

namespace safenav {

namespace {

double edge_risk(Point2 from, Point2 to, const Polyline& central, const RiskZoneConfig& zones,
                 int interior_samples) {
  double risk = wrs(closest_point_on_polyline(to, central).distance, zones);
  for (int i = 1; i <= interior_samples; ++i) {
    const double t = static_cast<double>(i) / (interior_samples + 1);
    risk += wrs(closest_point_on_polyline(from + t * (to - from), central).distance, zones);
  }
  return risk;
}

class Tree {
 public:
  Tree(const Polyline& central, const RiskZoneConfig& zones, const PlannerConfig& cfg)
      : central_(central), zones_(zones), cfg_(cfg) {}

  double increment(Point2 from, Point2 to) const {
    return cfg_.alpha * distance(from, to) +
           cfg_.beta * edge_risk(from, to, central_, zones_, cfg_.edge_risk_samples);
  }

  void add_root(Point2 p) {
    const double c = cfg_.beta * wrs(closest_point_on_polyline(p, central_).distance, zones_);
    nodes_.push_back({p, -1, c, c, {}});
  }

  int add(Point2 p, int parent, double inc) {
    nodes_.push_back({p, parent, nodes_[parent].cost + inc, inc, {}});
    const int id = static_cast<int>(nodes_.size()) - 1;
    nodes_[parent].children.push_back(id);
    return id;
  }

  void reparent(int node, int new_parent, double inc) {
    auto& siblings = nodes_[nodes_[node].parent].children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), node));
    nodes_[node].parent = new_parent;
    nodes_[node].increment = inc;
    nodes_[new_parent].children.push_back(node);
    refresh_costs(node);
  }

  int nearest(Point2 p) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double d = distance(nodes_[i].point, p);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  std::vector<int> near(Point2 p, double radius) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (distance(nodes_[i].point, p) <= radius) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  std::vector<PlanNode>& nodes() { return nodes_; }

 private:
  void refresh_costs(int root) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      nodes_[n].cost = nodes_[nodes_[n].parent].cost + nodes_[n].increment;
      for (int c : nodes_[n].children) stack.push_back(c);
    }
  }

  const Polyline& central_;
  const RiskZoneConfig& zones_;
  const PlannerConfig& cfg_;
  std::vector<PlanNode> nodes_;
};

bool point_clear(Point2 p, const ObstacleMap& map) {
  return std::all_of(map.obstacles.begin(), map.obstacles.end(),
                     [p](const Circle& c) { return distance(p, c.center) > c.radius; });
}

}  // namespace

void PlannerConfig::validate() const {
  if (!(alpha >= 0.0 && beta >= 0.0)) throw ValidationError("alpha and beta must be >= 0");
  if (!(step_size > 0.0)) throw ValidationError("step_size must be positive");
  if (!(goal_radius > 0.0)) throw ValidationError("goal_radius must be positive");
  if (!(rewire_radius > 0.0)) throw ValidationError("rewire_radius must be positive");
  if (max_iterations < 1) throw ValidationError("max_iterations must be positive");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) throw ValidationError("goal_bias must be in [0, 1]");
  if (edge_risk_samples < 0) throw ValidationError("edge_risk_samples must be >= 0");
}

bool collision_free(Point2 p1, Point2 p2, const ObstacleMap& map) {
  return std::all_of(map.obstacles.begin(), map.obstacles.end(), [&](const Circle& c) {
    return point_segment_distance(c.center, p1, p2) > c.radius;
  });
}

PathCost path_cost(std::span<const Point2> path, const Polyline& central,
                   const RiskZoneConfig& zones, const PlannerConfig& cfg) {
  if (path.empty()) throw ValidationError("path_cost needs at least one point");
  PathCost cost;
  cost.risk = wrs(closest_point_on_polyline(path.front(), central).distance, zones);
  for (std::size_t i = 1; i < path.size(); ++i) {
    cost.length += distance(path[i - 1], path[i]);
    cost.risk += edge_risk(path[i - 1], path[i], central, zones, cfg.edge_risk_samples);
  }
  cost.total = cfg.alpha * cost.length + cfg.beta * cost.risk;
  return cost;
}

PlanResult plan(Point2 start, Point2 goal, const ObstacleMap& map,
                const SafePathBuffer& buffer, const PlannerConfig& cfg, Rng& rng,
                const Polyline* sampling_line) {
  cfg.validate();
  if (!is_finite(start) || !is_finite(goal)) throw ValidationError("non-finite plan endpoints");
  if (!point_clear(start, map)) throw ValidationError("plan start lies inside an obstacle");
  if (!point_clear(goal, map)) throw ValidationError("plan goal lies inside an obstacle");

  const Polyline& region = sampling_line != nullptr ? *sampling_line : buffer.central();
  const double margin = 2.0 * buffer.half_width();
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (Point2 p : region.points()) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  lo_x -= margin;
  lo_y -= margin;
  hi_x += margin;
  hi_y += margin;

  auto sample = [&]() -> Point2 {
    if (rng.uniform() < cfg.goal_bias) return goal;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Point2 p{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
      if (closest_point_on_polyline(p, region).distance <= margin) return p;
    }
    return goal;
  };

  Tree tree(buffer.central(), buffer.zones(), cfg);
  tree.add_root(start);
  std::vector<int> goal_nodes;
  if (distance(start, goal) <= cfg.goal_radius) goal_nodes.push_back(0);

  PlanResult result;
  auto best_goal = [&]() {
    int best = -1;
    for (int n : goal_nodes) {
      if (best < 0 || tree.nodes()[n].cost < tree.nodes()[best].cost) best = n;
    }
    return best;
  };

  if (goal_nodes.empty()) {
    for (int k = 0; k < cfg.max_iterations; ++k) {
      result.iterations_used = k + 1;
      const Point2 target = sample();
      const int nearest = tree.nearest(target);
      const Point2 from = tree.nodes()[nearest].point;
      const double d = distance(from, target);
      if (d == 0.0) {
        result.best_cost_history.push_back(result.best_cost_history.empty()
                                               ? std::numeric_limits<double>::infinity()
                                               : result.best_cost_history.back());
        continue;
      }
      const Point2 p_new = d <= cfg.step_size ? target : from + (cfg.step_size / d) * (target - from);

      double best_inc = std::numeric_limits<double>::infinity();
      int parent = -1;
      if (collision_free(from, p_new, map)) {
        const std::vector<int> neighbours = tree.near(p_new, cfg.rewire_radius);
        // Choose the cheapest collision-free parent among the neighbours.
        best_inc = tree.increment(from, p_new);
        parent = nearest;
        double best_cost = tree.nodes()[nearest].cost + best_inc;
        for (int n : neighbours) {
          if (n == nearest) continue;
          const Point2 q = tree.nodes()[n].point;
          const double inc = tree.increment(q, p_new);
          const double c = tree.nodes()[n].cost + inc;
          if (c < best_cost && collision_free(q, p_new, map)) {
            best_cost = c;
            best_inc = inc;
            parent = n;
          }
        }
        const int id = tree.add(p_new, parent, best_inc);
        for (int n : neighbours) {
          if (n == parent) continue;
          const Point2 q = tree.nodes()[n].point;
          const double inc = tree.increment(p_new, q);
          if (tree.nodes()[id].cost + inc < tree.nodes()[n].cost &&
              collision_free(p_new, q, map)) {
            tree.reparent(n, id, inc);
          }
        }
        if (distance(p_new, goal) <= cfg.goal_radius) goal_nodes.push_back(id);
      }
      const int best = best_goal();
      result.best_cost_history.push_back(best < 0 ? std::numeric_limits<double>::infinity()
                                                  : tree.nodes()[best].cost);
    }
  }

  const int best = best_goal();
  if (best < 0) {
    int closest = 0;
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      if (distance(tree.nodes()[i].point, goal) <
          distance(tree.nodes()[closest].point, goal)) {
        closest = static_cast<int>(i);
      }
    }
    throw PlanningFailed("no tree node reached the goal region", tree.nodes()[closest].cost,
                         distance(tree.nodes()[closest].point, goal));
  }

  for (int n = best; n >= 0; n = tree.nodes()[n].parent) {
    result.path.push_back(tree.nodes()[n].point);
  }
  std::reverse(result.path.begin(), result.path.end());
  const PathCost cost = path_cost(result.path, buffer.central(), buffer.zones(), cfg);
  result.total_cost = tree.nodes()[best].cost;
  result.length_cost = cost.length;
  result.risk_cost = cost.risk;
  result.tree = std::move(tree.nodes());
  return result;
}

}  // namespace safenav
