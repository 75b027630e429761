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

#ifndef SAFENAV_GEOMETRY_HPP_
#define SAFENAV_GEOMETRY_HPP_

#include <cmath>
#include <span>
#include <vector>

namespace safenav {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Signed area test: > 0 when o->a->b turns counter-clockwise.
inline double orient(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }

// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

// Bearing of `to` seen from `from`, in (-pi, pi].
inline double bearing(Point2 from, Point2 to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

// Ordered point sequence with at least two points and no zero-length edges.
// Consecutive duplicates are dropped on construction.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> points);

  const std::vector<Point2>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  Point2 front() const { return points_.front(); }
  Point2 back() const { return points_.back(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }

  // Cumulative arc length at each vertex; first entry 0.
  const std::vector<double>& cumulative_length() const { return cumulative_; }
  double length() const { return cumulative_.back(); }

  // Point at arc length s, clamped to [0, length()].
  Point2 point_at(double s) const;

 private:
  std::vector<Point2> points_;
  std::vector<double> cumulative_;
};

// Counter-clockwise polygon with no three consecutive collinear vertices.
// Only convex_hull() creates one.
class ConvexPolygon {
 public:
  const std::vector<Point2>& vertices() const { return vertices_; }
  double area() const;

 private:
  friend ConvexPolygon convex_hull(std::span<const Point2> points);
  explicit ConvexPolygon(std::vector<Point2> vertices)
      : vertices_(std::move(vertices)) {}
  std::vector<Point2> vertices_;
};

// Andrew's monotone chain. Throws DegenerateHullError for fewer than three
// distinct points or an all-collinear set.
ConvexPolygon convex_hull(std::span<const Point2> points);

// Closed-region test: boundary points count as inside, with a 1e-9 m
// tolerance on the signed distance to each edge.
bool point_in_polygon(Point2 p, const ConvexPolygon& poly);

struct PolylineProjection {
  Point2 point;
  double distance = 0.0;
  double arc_length = 0.0;  // arc length of `point` along the polyline
  std::size_t edge = 0;     // index of the edge holding `point`
};

PolylineProjection project_onto_polyline(Point2 p, const Polyline& line);

struct ClosestPoint {
  Point2 point;
  double distance = 0.0;
};

ClosestPoint closest_point_on_polyline(Point2 p, const Polyline& line);

// Closest point of segment [a, b] to p.
Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b);
double point_segment_distance(Point2 p, Point2 a, Point2 b);

double polyline_length(const Polyline& line);

// Length of an arbitrary point sequence (0 for fewer than two points).
double path_length(std::span<const Point2> points);

// Arithmetic mean; throws ValidationError on empty input.
Point2 centroid(std::span<const Point2> points);

// n contiguous pieces of equal arc length. Adjacent pieces share their cut
// point and every piece has at least two points.
std::vector<Polyline> split_polyline(const Polyline& line, int n);

// `count` points spaced evenly in arc length from the first to the last
// point of `points`. A single-point input is repeated.
std::vector<Point2> resample_by_arc_length(std::span<const Point2> points,
                                           std::size_t count);

}  // namespace safenav

#endif  // SAFENAV_GEOMETRY_HPP_
