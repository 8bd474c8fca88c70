#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "airline/error.hpp"
#include "airline/geometry.hpp"
#include "airline/raster.hpp"

namespace airline {

struct SynthParams {
  int width = 512;
  int height = 512;
  int count = 15;
  std::uint64_t seed = 0;
  double min_len = 30.0;
  double separation = 10.0;
  double max_len = 0.0;  // 0 selects min(width, height) / 3
  int max_attempts = 10'000;
};

struct SynthScene {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<LineSegment> segments;
  GrayImage edge_map;
};

/// Distance from point p to the closed segment ab.
inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

/// Minimum Euclidean distance between two closed segments.
inline double segment_distance(const LineSegment& s, const LineSegment& t) {
  if (segments_intersect(s.p1, s.p2, t.p1, t.p2)) return 0.0;
  return std::min({point_segment_distance(s.p1, t.p1, t.p2), point_segment_distance(s.p2, t.p1, t.p2),
                   point_segment_distance(t.p1, s.p1, s.p2), point_segment_distance(t.p2, s.p1, s.p2)});
}

namespace detail {

// 53-bit uniform double in [0, 1). mt19937_64 output is fully specified, so
// scenes do not depend on the standard library's distributions.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Random segments with integer endpoints inside the raster, each at least
/// `min_len` long and at least `separation` away from every other, plus their
/// perfect 1-pixel edge rendering.
inline SynthScene generate_scene(const SynthParams& p) {
  detail::require(p.count >= 1, "scene needs at least one segment");
  detail::require(p.width >= 2 && p.height >= 2, "scene raster is too small");
  detail::require(p.min_len > 0.0 && p.separation >= 0.0, "invalid length or separation");
  const double max_len = p.max_len > 0.0 ? p.max_len : std::max(p.min_len, std::min(p.width, p.height) / 3.0);
  detail::require(max_len >= p.min_len, "max_len must be >= min_len");

  SynthScene scene;
  scene.width = p.width;
  scene.height = p.height;
  scene.seed = p.seed;
  std::mt19937_64 rng(p.seed);
  const double pi = 3.14159265358979323846;
  int attempts = 0;
  while (static_cast<int>(scene.segments.size()) < p.count) {
    if (attempts++ >= p.max_attempts)
      throw CapacityError("could only place " + std::to_string(scene.segments.size()) + " of " +
                          std::to_string(p.count) + " segments in " + std::to_string(p.max_attempts) +
                          " attempts; request fewer segments, a smaller separation, or a larger raster");
    const double cx = detail::unit_uniform(rng) * (p.width - 1);
    const double cy = detail::unit_uniform(rng) * (p.height - 1);
    const double angle = detail::unit_uniform(rng) * pi;
    const double len = p.min_len + detail::unit_uniform(rng) * (max_len - p.min_len);
    const double hx = 0.5 * len * std::cos(angle);
    const double hy = 0.5 * len * std::sin(angle);
    const Point2 a{std::round(cx - hx), std::round(cy - hy)};
    const Point2 b{std::round(cx + hx), std::round(cy + hy)};
    if (a.x < 0 || a.y < 0 || b.x < 0 || b.y < 0 || a.x > p.width - 1 || b.x > p.width - 1 ||
        a.y > p.height - 1 || b.y > p.height - 1)
      continue;
    const LineSegment cand = make_segment(a, b);
    if (cand.length() < p.min_len) continue;
    const bool clear = std::all_of(scene.segments.begin(), scene.segments.end(),
                                   [&](const LineSegment& s) { return segment_distance(s, cand) >= p.separation; });
    if (clear) scene.segments.push_back(cand);
  }
  scene.edge_map = GrayImage(p.width, p.height, 0.0);
  for (const LineSegment& s : scene.segments)
    for (PixelCoord px : bresenham(round_to_pixel(s.p1), round_to_pixel(s.p2))) scene.edge_map[px] = 1.0;
  return scene;
}

struct RecoveryStats {
  std::size_t ground_truth = 0;
  std::size_t detected = 0;
  std::size_t matched = 0;    // greedy one-to-one pairs
  std::size_t recovered = 0;  // matched pairs within both tolerances
  double recovered_fraction = 0.0;
  double mean_endpoint_error = 0.0;  // over matched pairs, pixels
  double mean_angle_error = 0.0;     // over matched pairs, degrees
};

/// Both endpoint distances under the better of the two pairings.
inline std::pair<double, double> endpoint_errors(const LineSegment& det, const LineSegment& gt) {
  const double a1 = distance(det.p1, gt.p1), a2 = distance(det.p2, gt.p2);
  const double b1 = distance(det.p1, gt.p2), b2 = distance(det.p2, gt.p1);
  if (a1 + a2 <= b1 + b2) return {a1, a2};
  return {b1, b2};
}

/// Greedy one-to-one matching of detections to ground truth by smallest mean
/// endpoint distance.
inline RecoveryStats score_recovery(std::span<const LineSegment> detected, std::span<const LineSegment> truth,
                                    double endpoint_tol, double angle_tol_deg) {
  RecoveryStats st;
  st.ground_truth = truth.size();
  st.detected = detected.size();
  struct Pair {
    double cost;
    std::size_t d;
    std::size_t g;
  };
  std::vector<Pair> pairs;
  pairs.reserve(detected.size() * truth.size());
  for (std::size_t d = 0; d < detected.size(); ++d)
    for (std::size_t g = 0; g < truth.size(); ++g) {
      const auto [e1, e2] = endpoint_errors(detected[d], truth[g]);
      pairs.push_back({0.5 * (e1 + e2), d, g});
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.cost < b.cost; });
  std::vector<bool> det_used(detected.size()), gt_used(truth.size());
  double endpoint_sum = 0.0;
  double angle_sum = 0.0;
  for (const Pair& pr : pairs) {
    if (det_used[pr.d] || gt_used[pr.g]) continue;
    det_used[pr.d] = gt_used[pr.g] = true;
    const auto [e1, e2] = endpoint_errors(detected[pr.d], truth[pr.g]);
    const double angle = undirected_angle_deg(detected[pr.d].p2 - detected[pr.d].p1, truth[pr.g].p2 - truth[pr.g].p1);
    ++st.matched;
    endpoint_sum += pr.cost;
    angle_sum += angle;
    if (std::max(e1, e2) <= endpoint_tol && angle <= angle_tol_deg) ++st.recovered;
  }
  if (st.matched > 0) {
    st.mean_endpoint_error = endpoint_sum / static_cast<double>(st.matched);
    st.mean_angle_error = angle_sum / static_cast<double>(st.matched);
  }
  st.recovered_fraction = truth.empty() ? 0.0 : static_cast<double>(st.recovered) / static_cast<double>(truth.size());
  return st;
}

}  // namespace airline
