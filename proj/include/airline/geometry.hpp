#pragma once

#include <algorithm>
#include <cmath>
#include <compare>

namespace airline {

/// Sub-pixel position. x is the column, y is the row; pixel centres sit on
/// integer coordinates and the origin is the top-left pixel.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline double squared_distance(Point2 a, Point2 b) {
  const Point2 d = a - b;
  return dot(d, d);
}

/// Integer pixel index on a raster.
struct PixelCoord {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

/// A detected or ground-truth line segment.
///
/// `center` is the anchor the segment was built around (for detections the
/// mean of the region pixels) and need not be the midpoint of p1 and p2.
/// `direction` is a unit vector in the closed upper half-plane.
struct LineSegment {
  Point2 p1;
  Point2 p2;
  Point2 center;
  Point2 direction{1.0, 0.0};

  double length() const { return distance(p1, p2); }

  friend bool operator==(const LineSegment&, const LineSegment&) = default;
};

/// Flips a direction into the closed upper half-plane (y > 0, or y == 0 and
/// x >= 0) so that undirected lines compare equal.
inline Point2 canonical_direction(Point2 d) {
  if (d.y < 0.0 || (d.y == 0.0 && d.x < 0.0)) return {-d.x, -d.y};
  return d;
}

/// Builds a segment from two endpoints; centre is their midpoint.
inline LineSegment make_segment(Point2 a, Point2 b) {
  LineSegment s;
  s.p1 = a;
  s.p2 = b;
  s.center = 0.5 * (a + b);
  const Point2 d = b - a;
  const double len = norm(d);
  s.direction = len > 0.0 ? canonical_direction((1.0 / len) * d) : Point2{1.0, 0.0};
  return s;
}

/// Undirected angle between two directions in degrees, in [0, 90].
inline double undirected_angle_deg(Point2 a, Point2 b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 90.0;
  return std::atan2(std::abs(cross(a, b)), std::abs(dot(a, b))) * 180.0 / 3.14159265358979323846;
}

}  // namespace airline
