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

#include "safenav/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "safenav/error.hpp"

namespace safenav {

double wrap_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

Polyline::Polyline(std::vector<Point2> points) {
  for (const Point2& p : points) {
    if (!is_finite(p)) throw ValidationError("polyline point is not finite");
    if (points_.empty() || !(points_.back() == p)) points_.push_back(p);
  }
  if (points_.size() < 2) {
    throw ValidationError("polyline needs at least two distinct points");
  }
  cumulative_.reserve(points_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    cumulative_.push_back(cumulative_.back() + distance(points_[i - 1], points_[i]));
  }
}

Point2 Polyline::point_at(double s) const {
  if (s <= 0.0) return points_.front();
  if (s >= length()) return points_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double edge = cumulative_[i + 1] - cumulative_[i];
  const double t = (s - cumulative_[i]) / edge;
  return points_[i] + t * (points_[i + 1] - points_[i]);
}

double ConvexPolygon::area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    twice += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return 0.5 * twice;
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    throw DegenerateHullError("convex hull needs at least three distinct points");
  }

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    throw DegenerateHullError("convex hull input is collinear");
  }
  return ConvexPolygon(std::move(hull));
}

bool point_in_polygon(Point2 p, const ConvexPolygon& poly) {
  constexpr double kTolerance = 1e-9;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    const double edge = distance(a, b);
    if (orient(a, b, p) < -kTolerance * edge) return false;
  }
  return true;
}

Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return distance(p, closest_point_on_segment(p, a, b));
}

PolylineProjection project_onto_polyline(Point2 p, const Polyline& line) {
  PolylineProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  const auto& pts = line.points();
  const auto& cum = line.cumulative_length();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point2 q = closest_point_on_segment(p, pts[i], pts[i + 1]);
    const double d = distance(p, q);
    if (d < best.distance) {
      best.point = q;
      best.distance = d;
      best.arc_length = cum[i] + distance(pts[i], q);
      best.edge = i;
    }
  }
  return best;
}

ClosestPoint closest_point_on_polyline(Point2 p, const Polyline& line) {
  const PolylineProjection proj = project_onto_polyline(p, line);
  return {proj.point, proj.distance};
}

double polyline_length(const Polyline& line) { return line.length(); }

double path_length(std::span<const Point2> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += distance(points[i - 1], points[i]);
  }
  return total;
}

Point2 centroid(std::span<const Point2> points) {
  if (points.empty()) throw ValidationError("centroid of an empty point set");
  Point2 sum;
  for (const Point2& p : points) sum = sum + p;
  return (1.0 / static_cast<double>(points.size())) * sum;
}

std::vector<Polyline> split_polyline(const Polyline& line, int n) {
  if (n < 1) throw ValidationError("split_polyline needs n >= 1");
  if (n == 1) return {line};

  const auto& pts = line.points();
  const auto& cum = line.cumulative_length();
  const double total = line.length();

  std::vector<Polyline> pieces;
  pieces.reserve(static_cast<std::size_t>(n));
  std::size_t vertex = 1;  // first vertex strictly after the current cut
  Point2 start = pts.front();
  for (int k = 1; k <= n; ++k) {
    std::vector<Point2> piece{start};
    if (k == n) {
      for (; vertex < pts.size(); ++vertex) piece.push_back(pts[vertex]);
      pieces.emplace_back(std::move(piece));
      break;
    }
    const double cut = total * static_cast<double>(k) / static_cast<double>(n);
    while (vertex < pts.size() - 1 && cum[vertex] < cut) {
      piece.push_back(pts[vertex]);
      ++vertex;
    }
    Point2 end = line.point_at(cut);
    if (vertex < pts.size() && cum[vertex] == cut) {
      end = pts[vertex];
      ++vertex;
    }
    piece.push_back(end);
    pieces.emplace_back(std::move(piece));
    start = end;
  }
  return pieces;
}

std::vector<Point2> resample_by_arc_length(std::span<const Point2> points,
                                           std::size_t count) {
  if (points.empty()) throw ValidationError("cannot resample an empty path");
  if (count == 0) return {};
  std::vector<double> cum(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    cum[i] = cum[i - 1] + distance(points[i - 1], points[i]);
  }
  const double total = cum.back();
  std::vector<Point2> out;
  out.reserve(count);
  if (total == 0.0 || count == 1) {
    out.assign(count, points.front());
    if (count > 1) out.back() = points.back();
    return out;
  }
  std::size_t seg = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(count - 1);
    if (k == count - 1) {
      out.push_back(points.back());
      break;
    }
    while (seg + 2 < points.size() && cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    out.push_back(points[seg] + t * (points[seg + 1] - points[seg]));
  }
  return out;
}

}  // namespace safenav
