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

#include "safenav/navigator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <variant>

#include "safenav/error.hpp"

namespace safenav {

namespace {

double arc_on(const Polyline& line, Point2 p) { return project_onto_polyline(p, line).arc_length; }

std::vector<double> segment_starts(const SafePathBuffer& buffer) {
  std::vector<double> starts;
  double s = 0.0;
  for (const Polyline& seg : buffer.segments()) {
    starts.push_back(s);
    s += seg.length();
  }
  return starts;
}

// Sub-polyline of `line` between arc lengths s0 < s1.
Polyline slice(const Polyline& line, double s0, double s1) {
  s0 = std::clamp(s0, 0.0, line.length());
  s1 = std::clamp(s1, 0.0, line.length());
  std::vector<Point2> pts{line.point_at(s0)};
  const auto& cum = line.cumulative_length();
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (cum[i] > s0 && cum[i] < s1) pts.push_back(line[i]);
  }
  pts.push_back(line.point_at(s1));
  if (pts.size() == 2 && pts[0] == pts[1]) pts[1] = pts[0] + Point2{1e-3, 0.0};
  return Polyline(std::move(pts));
}

bool clear_of(Point2 p, const ObstacleMap& map) {
  return std::all_of(map.obstacles.begin(), map.obstacles.end(),
                     [p](const Circle& c) { return distance(p, c.center) > c.radius; });
}

ObstacleMap inflate(const ObstacleMap& map, double clearance) {
  ObstacleMap out;
  out.obstacles = map.obstacles;
  for (Circle& c : out.obstacles) c.radius += clearance;
  return out;
}

}  // namespace

std::string to_string(NavMethod method) {
  return method == NavMethod::kChull ? "chull" : "centroid";
}

std::string to_string(NavOutcome outcome) {
  switch (outcome) {
    case NavOutcome::kReached:
      return "reached";
    case NavOutcome::kAborted:
      return "aborted";
    case NavOutcome::kStepLimit:
      return "step-limit";
  }
  return "aborted";
}

std::string to_string(FilterKind kind) { return kind == FilterKind::kEkf ? "ekf" : "pf"; }

NavMethod parse_method(const std::string& name) {
  if (name == "chull") return NavMethod::kChull;
  if (name == "centroid") return NavMethod::kCentroid;
  throw ValidationError("unknown method '" + name + "' (expected chull or centroid)");
}

FilterKind parse_filter(const std::string& name) {
  if (name == "ekf") return FilterKind::kEkf;
  if (name == "pf") return FilterKind::kPf;
  throw ValidationError("unknown filter '" + name + "' (expected ekf or pf)");
}

void NavConfig::validate() const {
  if (max_steps <= 0) throw ValidationError("max_steps must be positive");
  if (!(speed > 0.0)) throw ValidationError("navigation speed must be positive");
  if (subsegments_per_segment < 1) throw ValidationError("subsegments_per_segment must be >= 1");
  if (!(lookahead > 0.0)) throw ValidationError("lookahead must be positive");
  if (!(obstacle_check_radius >= 0.0)) throw ValidationError("obstacle_check_radius must be >= 0");
  if (!(clearance >= 0.0)) throw ValidationError("clearance must be >= 0");
  if (!(goal_radius > 0.0)) throw ValidationError("goal_radius must be positive");
  if (max_replans < 0 || max_back_steps < 0) {
    throw ValidationError("max_replans and max_back_steps must be >= 0");
  }
}

ControlInput compute_control_input(const MotionState& from, Point2 to, const MotionLimits&) {
  if (to == from.position) return {};
  return {from.v, wrap_angle(bearing(from.position, to) - from.theta)};
}

std::vector<ConvexPolygon> segment_hulls(const SafePathBuffer& buffer) {
  constexpr int kSides = 16;
  // Circumscribe the circle so the polygon covers the full W-dilation.
  const double r = buffer.half_width() / std::cos(std::numbers::pi / kSides);
  std::vector<ConvexPolygon> hulls;
  for (const Polyline& seg : buffer.segments()) {
    std::vector<Point2> pts;
    for (Point2 v : seg.points()) {
      for (int k = 0; k < kSides; ++k) {
        const double a = 2.0 * std::numbers::pi * k / kSides;
        pts.push_back(v + Point2{r * std::cos(a), r * std::sin(a)});
      }
    }
    hulls.push_back(convex_hull(pts));
  }
  return hulls;
}

ChullTracker::ChullTracker(const SafePathBuffer& buffer, const NavConfig& cfg,
                           const MotionLimits& lim, const TerrainModel& terrain)
    : buffer_(buffer), cfg_(cfg), lim_(lim), terrain_(terrain), hulls_(segment_hulls(buffer)) {
  double s = 0.0;
  for (std::size_t i = 0; i < buffer.segments().size(); ++i) {
    const Polyline& seg = buffer.segments()[i];
    segment_centroids_.push_back(centroid(seg.points()));
    for (std::size_t j = 1; j < seg.size(); ++j) {
      waypoints_.push_back({seg[j], s + seg.cumulative_length()[j], i});
    }
    s += seg.length();
  }
}

bool ChullTracker::in_hull(std::size_t index, Point2 p) const {
  return index < hulls_.size() && point_in_polygon(p, hulls_[index]);
}

Point2 ChullTracker::ahead_target(Point2 p) const {
  const Polyline& central = buffer_.central();
  const double s = arc_on(central, p) + cfg_.lookahead;
  for (std::size_t i = segment_; i < std::min(segment_ + 2, segment_centroids_.size()); ++i) {
    if (arc_on(central, segment_centroids_[i]) > s) return segment_centroids_[i];
  }
  return central.back();
}

void ChullTracker::aim(Point2 p) {
  const Point2 target = waypoints_[waypoint_].point;
  if (!(target == p)) {
    heading_goal_ = bearing(p, target);
    turning_ = true;
  }
}

ControlInput ChullTracker::default_command(const MotionState& estimate) const {
  if (!turning_) return cfg_.default_command();
  return {cfg_.speed, wrap_angle(heading_goal_ - estimate.theta)};
}

ControlInput ChullTracker::take_command(const MotionState& estimate) {
  const ControlInput u = default_command(estimate);
  // The turn completes once the remaining change fits in one step.
  if (std::abs(u.delta_theta) <= lim_.m * lim_.dt) turning_ = false;
  return u;
}

bool ChullTracker::accept(Point2 p, Point2 next) {
  if (in_hull(segment_, next)) return true;
  if (in_hull(segment_ + 1, next)) {
    ++segment_;
    aim(p);
    return true;
  }
  return false;
}

void ChullTracker::resync(const MotionState& estimate) {
  const double s = arc_on(buffer_.central(), estimate.position);
  while (waypoint_ + 1 < waypoints_.size() && waypoints_[waypoint_].arc <= s) ++waypoint_;
  segment_ = std::max(segment_, waypoints_[waypoint_].segment);
  confirmed_ = estimate.position;
  back_steps_ = 0;
  started_ = true;
  aim(estimate.position);
}

StepDecision ChullTracker::step(const MotionState& estimate) {
  const Point2 p = estimate.position;
  if (!in_hull(segment_, p)) {
    if (!in_hull(segment_ + 1, p)) {
      throw NavigationAborted("entity is outside the current and next segment hull");
    }
    ++segment_;
    aim(p);
  }
  if (!started_) {
    started_ = true;
    confirmed_ = p;
    aim(p);
  }
  // Look-ahead point reached or passed: head for the next trajectory point.
  bool advanced = false;
  const double s = arc_on(buffer_.central(), p);
  while (waypoint_ + 1 < waypoints_.size() &&
         (distance(p, waypoints_[waypoint_].point) <= cfg_.lookahead ||
          s >= waypoints_[waypoint_].arc)) {
    ++waypoint_;
    advanced = true;
  }
  if (advanced) {
    segment_ = std::max(segment_, waypoints_[waypoint_].segment);
    aim(p);
  }

  const bool was_turning = turning_;
  ControlInput u = take_command(estimate);
  Point2 next = propagate(estimate, u, lim_, terrain_).position;
  if (accept(p, next)) {
    back_steps_ = 0;
    confirmed_ = p;
    return {next, u};
  }

  const Point2 target = ahead_target(p);
  turning_ = was_turning;
  if (!(target == p)) {
    heading_goal_ = bearing(p, target);
    turning_ = true;
  }
  u = take_command(estimate);
  next = propagate(estimate, u, lim_, terrain_).position;
  if (accept(p, next)) {
    back_steps_ = 0;
    confirmed_ = p;
    return {next, u};
  }

  ++back_steps_;
  ++total_back_steps_;
  if (back_steps_ > cfg_.max_back_steps) {
    throw NavigationAborted("too many consecutive back-steps");
  }
  u = compute_control_input(estimate, confirmed_, lim_);
  u.v_desired = cfg_.speed;
  return {confirmed_, u};
}

CentroidTracker::CentroidTracker(const SafePathBuffer& buffer, const NavConfig& cfg,
                                 const MotionLimits& lim, const TerrainModel& terrain)
    : buffer_(buffer), cfg_(cfg), lim_(lim), terrain_(terrain) {
  const std::vector<double> starts = segment_starts(buffer);
  for (std::size_t i = 0; i < buffer.segments().size(); ++i) {
    const Polyline& seg = buffer.segments()[i];
    std::vector<Point2> cs;
    std::vector<double> arcs;
    for (const Polyline& sub : split_polyline(seg, cfg.subsegments_per_segment)) {
      const Point2 c = centroid(sub.points());
      cs.push_back(c);
      arcs.push_back(starts[i] + arc_on(seg, c));
    }
    visited_.emplace_back(cs.size(), false);
    centroids_.push_back(std::move(cs));
    arc_.push_back(std::move(arcs));
  }
}

void CentroidTracker::consume(Point2 p) {
  const double s = arc_on(buffer_.central(), p);
  for (std::size_t i = segment_; i < centroids_.size(); ++i) {
    for (std::size_t j = 0; j < centroids_[i].size(); ++j) {
      if (visited_[i][j]) continue;
      if (s >= arc_[i][j] || (i == segment_ && distance(p, centroids_[i][j]) <= 0.5 * cfg_.lookahead)) {
        visited_[i][j] = true;
      }
    }
  }
  while (segment_ + 1 < centroids_.size() &&
         std::all_of(visited_[segment_].begin(), visited_[segment_].end(),
                     [](bool v) { return v; })) {
    ++segment_;
  }
}

StepDecision CentroidTracker::step(const MotionState& estimate) {
  const Point2 p = estimate.position;
  consume(p);
  Point2 target = buffer_.central().back();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids_[segment_].size(); ++j) {
    if (visited_[segment_][j]) continue;
    const double d = distance(p, centroids_[segment_][j]);
    if (d < best) {
      best = d;
      target = centroids_[segment_][j];
    }
  }
  ControlInput u = cfg_.default_command();
  if (!(target == p)) u.delta_theta = wrap_angle(bearing(p, target) - estimate.theta);
  const Point2 next = propagate(estimate, u, lim_, terrain_).position;
  if (!buffer_.contains(next)) ++violations_;
  return {next, u};
}

NavRecord navigate(const MotionState& start, const NavContext& ctx, std::uint64_t trial_seed) {
  if (ctx.world == nullptr || ctx.buffer == nullptr) {
    throw ValidationError("navigation needs a world and a safe-path buffer");
  }
  ctx.nav.validate();
  ctx.limits.validate();
  const World& world = *ctx.world;
  const SafePathBuffer& buffer = *ctx.buffer;
  const Polyline& central = buffer.central();
  const ObstacleMap& obstacles = world.obstacle_map();
  const TerrainModel& terrain = world.terrain();

  Rng process_rng(trial_seed, Stream::kProcess);
  Rng sensor_rng(trial_seed, Stream::kSensor);
  Rng filter_rng(trial_seed, Stream::kFilter);
  Rng planner_rng(trial_seed, Stream::kPlanner);

  NavRecord rec;
  MotionState truth = start;
  PositionFix fix;
  try {
    fix = measure_position(truth.position, world, ctx.sensor_noise, sensor_rng);
  } catch (const LocalizationUnavailable& e) {
    rec.abort_reason = e.what();
    return rec;
  }
  const ImuReading imu = measure_imu(truth, ctx.sensor_noise, sensor_rng);
  FilterState init;
  init.mean << fix.position.x, fix.position.y, imu.v, imu.theta;
  init.covariance.diagonal() << ctx.sensor_noise.sigma_fix_x * ctx.sensor_noise.sigma_fix_x,
      ctx.sensor_noise.sigma_fix_y * ctx.sensor_noise.sigma_fix_y,
      ctx.sensor_noise.sigma_imu_v * ctx.sensor_noise.sigma_imu_v,
      ctx.sensor_noise.sigma_imu_theta * ctx.sensor_noise.sigma_imu_theta;

  const EstimatorContext est_ctx{ctx.limits, ctx.process_noise, terrain, ctx.filter};
  std::unique_ptr<StateEstimator> estimator =
      make_estimator(ctx.filter_kind, init, est_ctx, filter_rng);

  std::variant<ChullTracker, CentroidTracker> tracker =
      ctx.nav.method == NavMethod::kChull
          ? std::variant<ChullTracker, CentroidTracker>(
                std::in_place_type<ChullTracker>, buffer, ctx.nav, ctx.limits, terrain)
          : std::variant<ChullTracker, CentroidTracker>(
                std::in_place_type<CentroidTracker>, buffer, ctx.nav, ctx.limits, terrain);

  const Point2 goal = central.back();
  const Point2 last_edge = central.back() - central[central.size() - 2];
  const Point2 last_dir = (1.0 / norm(last_edge)) * last_edge;

  std::vector<Point2> waypoints;
  std::size_t waypoint = 0;
  bool detouring = false;
  double busy_ms = 0.0;
  using Clock = std::chrono::steady_clock;
  const auto ms = [](Clock::duration d) {
    return std::chrono::duration<double, std::milli>(d).count();
  };

  const auto obstacle_ahead = [&](const MotionState& est, Point2 next) -> const Circle* {
    Point2 dir = next - est.position;
    if (norm(dir) < 1e-9) dir = {std::cos(est.theta), std::sin(est.theta)};
    const Point2 probe = est.position + (ctx.nav.obstacle_check_radius / norm(dir)) * dir;
    const Circle* hit = nullptr;
    double hit_dist = std::numeric_limits<double>::infinity();
    for (const Circle& c : obstacles.obstacles) {
      if (point_segment_distance(c.center, est.position, probe) <= c.radius + ctx.nav.clearance) {
        const double d = distance(c.center, est.position);
        if (d < hit_dist) {
          hit_dist = d;
          hit = &c;
        }
      }
    }
    return hit;
  };

  const auto plan_detour = [&](const MotionState& est, const Circle& obstacle) {
    const ObstacleMap inflated = inflate(obstacles, ctx.nav.clearance);
    const double s_est = arc_on(central, est.position);
    double s_rejoin = std::max(s_est, arc_on(central, obstacle.center)) + obstacle.radius +
                      ctx.nav.clearance + 2.0;
    while (s_rejoin < central.length() && !clear_of(central.point_at(s_rejoin), inflated)) {
      s_rejoin += 1.0;
    }
    s_rejoin = std::min(s_rejoin, central.length());
    const Point2 rejoin = central.point_at(s_rejoin);
    const ObstacleMap& map = clear_of(est.position, inflated) ? inflated : obstacles;
    const Polyline region =
        slice(central, s_est - buffer.half_width(), s_rejoin + buffer.half_width());
    PlanResult result = plan(est.position, rejoin, map, buffer, ctx.planner, planner_rng, &region);
    waypoints.assign(result.path.begin() + 1, result.path.end());
    if (waypoints.empty() || (!(waypoints.back() == rejoin) &&
                              collision_free(waypoints.back(), rejoin, map))) {
      waypoints.push_back(rejoin);
    }
    waypoint = 0;
    detouring = true;
    ++rec.replans;
    rec.detours.push_back(result.path);
  };

  try {
    for (int k = 0; k < ctx.nav.max_steps; ++k) {
      const MotionState est = estimator->estimate();
      const auto t0 = Clock::now();
      StepDecision decision{};
      if (detouring) {
        while (waypoint < waypoints.size() &&
               distance(est.position, waypoints[waypoint]) <= 0.5 * ctx.nav.lookahead) {
          ++waypoint;
        }
        if (waypoint == waypoints.size()) {
          detouring = false;
          std::visit([&](auto& t) { t.resync(est); }, tracker);
        }
      }
      if (!detouring) decision = std::visit([&](auto& t) { return t.step(est); }, tracker);
      const auto t_checked = Clock::now();

      if (!detouring && rec.replans < ctx.nav.max_replans) {
        if (const Circle* hit = obstacle_ahead(est, decision.next)) plan_detour(est, *hit);
      }
      if (detouring) {
        decision.next = waypoints[waypoint];
        decision.u = compute_control_input(est, decision.next, ctx.limits);
        decision.u.v_desired = ctx.nav.speed;
      }

      truth = step(truth, decision.u, ctx.limits, ctx.process_noise, terrain, process_rng);
      fix = measure_position(truth.position, world, ctx.sensor_noise, sensor_rng);

      const auto t1 = Clock::now();
      estimator->predict(decision.u);
      estimator->update(fix);
      const auto t2 = Clock::now();
      busy_ms += ms(t_checked - t0) + ms(t2 - t1);

      const MotionState now = estimator->estimate();
      rec.predicted.push_back(decision.next);
      rec.estimates.push_back(now);
      rec.measured.push_back(now.position);
      rec.truth.push_back(truth);
      rec.fixes.push_back(fix.position);
      rec.controls.push_back(decision.u);

      const double to_goal = distance(now.position, goal);
      if (to_goal <= ctx.nav.goal_radius ||
          (dot(now.position - goal, last_dir) >= 0.0 && to_goal <= buffer.half_width())) {
        rec.outcome = NavOutcome::kReached;
        break;
      }
      if (k + 1 == ctx.nav.max_steps) rec.outcome = NavOutcome::kStepLimit;
    }
  } catch (const Error& e) {
    rec.outcome = NavOutcome::kAborted;
    rec.abort_reason = e.what();
  }

  if (const auto* chull = std::get_if<ChullTracker>(&tracker)) {
    rec.back_steps = chull->total_back_steps();
  } else {
    rec.buffer_violations = std::get<CentroidTracker>(tracker).buffer_violations();
  }
  rec.degeneracy_events = estimator->degeneracy_events();
  if (!rec.measured.empty()) rec.mean_step_ms = busy_ms / static_cast<double>(rec.measured.size());
  return rec;
}

}  // namespace safenav
