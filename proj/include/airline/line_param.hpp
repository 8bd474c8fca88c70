#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "airline/error.hpp"
#include "airline/geometry.hpp"
#include "airline/raster.hpp"
#include "airline/region_grow.hpp"

namespace airline {

namespace detail {

// An offset whose dot product with the reference is exactly zero falls back
// to the upper half-plane rule.
inline Point2 flip_toward(Point2 v, Point2 reference) {
  const double d = dot(v, reference);
  if (d < 0.0) return {-v.x, -v.y};
  if (d == 0.0) return canonical_direction(v);
  return v;
}

}  // namespace detail

inline constexpr int kMaxVoteIterations = 16;

/// Tangent of a pixel set by local edge voting: offsets from the centre of
/// mass are sign-aligned with a reference axis and summed. The reference
/// starts at the offset of the farthest pixel and is replaced by the vote
/// until the vote stops changing.
inline Point2 vote_tangent(std::span<const Point2> offsets) {
  Point2 reference{0.0, 0.0};
  double longest = -1.0;
  for (Point2 v : offsets) {
    const double d = dot(v, v);
    if (d > longest) {
      longest = d;
      reference = v;
    }
  }
  if (longest <= 0.0) throw DegenerateRegionError("region pixels coincide; no tangent can be voted");

  Point2 tangent = reference;
  for (int iter = 0; iter < kMaxVoteIterations; ++iter) {
    Point2 sum{0.0, 0.0};
    for (Point2 v : offsets) sum = sum + detail::flip_toward(v, tangent);
    const double len = norm(sum);
    if (!(len > 0.0)) throw DegenerateRegionError("tangent votes cancel to zero");
    const Point2 next = (1.0 / len) * sum;
    const bool settled = iter > 0 && next == tangent;
    tangent = next;
    if (settled) break;
  }
  return canonical_direction(tangent);
}

/// Turns a grown region into a segment: centre of mass, voted tangent, and
/// endpoints at the extreme signed projections of the pixels on the tangent.
inline LineSegment parameterize_points(std::span<const Point2> points) {
  if (points.size() < 2) throw DegenerateRegionError("a line needs at least two pixels");
  Point2 center{0.0, 0.0};
  for (Point2 p : points) center = center + p;
  center = (1.0 / static_cast<double>(points.size())) * center;

  std::vector<Point2> offsets;
  offsets.reserve(points.size());
  for (Point2 p : points) offsets.push_back(p - center);
  const Point2 tangent = vote_tangent(offsets);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Point2 v : offsets) {
    const double s = dot(v, tangent);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  LineSegment seg;
  seg.center = center;
  seg.direction = tangent;
  seg.p1 = center + lo * tangent;
  seg.p2 = center + hi * tangent;
  return seg;
}

inline LineSegment parameterize_region(const Region& region) {
  std::vector<Point2> pts;
  pts.reserve(region.pixels.size());
  for (PixelCoord p : region.pixels) pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return parameterize_points(pts);
}

}  // namespace airline
