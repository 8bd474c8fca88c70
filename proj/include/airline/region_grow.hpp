#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "airline/error.hpp"
#include "airline/geometry.hpp"
#include "airline/orientation.hpp"
#include "airline/raster.hpp"

namespace airline {

struct CrgConfig {
  double similarity_threshold = 0.98;
  int min_region_size = 15;

  void validate() const {
    if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0))
      throw ConfigError("crg.threshold must lie in (0,1]");
    if (min_region_size < 1) throw ConfigError("crg.min_pixels must be >= 1");
  }
};

/// Connected edge pixels with a shared orientation.
struct Region {
  std::vector<PixelCoord> pixels;  // in acceptance order, seed first
  std::vector<double> mean_descriptor;
  std::vector<double> raw_descriptor_sum;
};

/// Dot product of a pixel descriptor with a region mean, clamped to [0, 1].
template <typename A, typename B>
double descriptor_similarity(std::span<const A> d, std::span<const B> avg) {
  double s = 0.0;
  const std::size_t n = std::min(d.size(), avg.size());
  for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(d[i]) * static_cast<double>(avg[i]);
  return std::clamp(s, 0.0, 1.0);
}

inline double descriptor_similarity(std::span<const double> d, std::span<const double> avg) {
  return descriptor_similarity<double, double>(d, avg);
}

namespace detail {

inline std::vector<double> l2_normalized(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  std::vector<double> out(v.begin(), v.end());
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (double& x : out) x *= inv;
  }
  return out;
}

}  // namespace detail

/// Grows one region from `seed`. Pixels accepted into the region are marked
/// in `used`; rejected frontier pixels stay unused. `threshold` may be 0 to
/// grow the full 8-connected component.
inline Region grow_region(const BinaryMap& edges, const DescriptorMap& desc, double threshold, PixelCoord seed,
                          std::vector<std::uint8_t>& used, std::vector<PixelCoord>& frontier) {
  const int n = desc.channels();
  Region region;
  region.raw_descriptor_sum.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  double sum_norm = 0.0;

  auto accept = [&](PixelCoord p) {
    used[edges.index(p.x, p.y)] = 1;
    region.pixels.push_back(p);
    const auto d = desc.at(p);
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
      region.raw_descriptor_sum[static_cast<std::size_t>(i)] += d[static_cast<std::size_t>(i)];
      sq += region.raw_descriptor_sum[static_cast<std::size_t>(i)] * region.raw_descriptor_sum[static_cast<std::size_t>(i)];
    }
    sum_norm = std::sqrt(sq);
    for (int i = 0; i < n; ++i)
      mean[static_cast<std::size_t>(i)] = sum_norm > 0.0 ? region.raw_descriptor_sum[static_cast<std::size_t>(i)] / sum_norm : 0.0;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int qx = p.x + dx;
        const int qy = p.y + dy;
        if (!edges.in_bounds(qx, qy) || !edges(qx, qy)) continue;
        if (used[edges.index(qx, qy)]) continue;
        frontier.push_back({qx, qy});
      }
  };

  frontier.clear();
  accept(seed);
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const PixelCoord q = frontier[head];
    if (used[edges.index(q.x, q.y)]) continue;
    const double s = descriptor_similarity<float, double>(desc.at(q), mean);
    if (s >= threshold) accept(q);
  }
  region.mean_descriptor = detail::l2_normalized(region.raw_descriptor_sum);
  return region;
}

/// Conditional region grow over the edge pixels. Seeds are taken in
/// row-major order, the frontier is FIFO, and regions with more than
/// `min_region_size` pixels are emitted. Pixels of discarded regions stay
/// used.
inline std::vector<Region> conditional_region_grow(const BinaryMap& edges, const DescriptorMap& desc,
                                                   const CrgConfig& cfg) {
  if (!desc.same_shape(edges)) throw ContractError("conditional_region_grow: edge map and descriptors differ in size");
  std::vector<std::uint8_t> used(edges.size(), 0);
  std::vector<PixelCoord> frontier;
  std::vector<Region> regions;
  for (int y = 0; y < edges.height(); ++y)
    for (int x = 0; x < edges.width(); ++x) {
      if (!edges(x, y) || used[edges.index(x, y)]) continue;
      Region r = grow_region(edges, desc, cfg.similarity_threshold, {x, y}, used, frontier);
      if (static_cast<int>(r.pixels.size()) > cfg.min_region_size) regions.push_back(std::move(r));
    }
  return regions;
}

/// Label raster: 0 for background, region index + 1 otherwise.
inline Raster<int> region_labels(int width, int height, std::span<const Region> regions) {
  Raster<int> labels(width, height, 0);
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (PixelCoord p : regions[i].pixels) labels[p] = static_cast<int>(i) + 1;
  return labels;
}

}  // namespace airline
