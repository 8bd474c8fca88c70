#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "airline/error.hpp"
#include "airline/geometry.hpp"

namespace airline {

/// Row-major 2D grid of values.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    detail::require(width >= 0 && height >= 0, "raster dimensions must be nonnegative");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    detail::require(width >= 0 && height >= 0, "raster dimensions must be nonnegative");
    detail::require(data_.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                    "raster data length must equal width * height");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool in_bounds(PixelCoord p) const { return in_bounds(p.x, p.y); }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](PixelCoord p) { return (*this)(p.x, p.y); }
  const T& operator[](PixelCoord p) const { return (*this)(p.x, p.y); }

  /// Value at (x, y), or `outside` for coordinates off the raster.
  T at_or(int x, int y, T outside) const { return in_bounds(x, y) ? (*this)(x, y) : outside; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  bool same_shape(const auto& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Intensities or probabilities in [0, 1].
using GrayImage = Raster<double>;

/// One byte per pixel, 0 or 1.
using BinaryMap = Raster<std::uint8_t>;

/// Builds a GrayImage, rejecting values outside [0, 1] or NaN.
inline GrayImage make_gray(int width, int height, std::vector<double> values) {
  for (double v : values) {
    detail::require(v >= 0.0 && v <= 1.0, "gray image values must lie in [0,1]");
  }
  return GrayImage(width, height, std::move(values));
}

inline std::size_t count_true(const BinaryMap& map) {
  return static_cast<std::size_t>(std::count_if(map.values().begin(), map.values().end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

/// Pixels of `map` that are set, in row-major order.
inline std::vector<PixelCoord> true_pixels(const BinaryMap& map) {
  std::vector<PixelCoord> out;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (map(x, y)) out.push_back({x, y});
  return out;
}

/// Inclusive threshold: a pixel is set iff its intensity is >= t.
inline BinaryMap threshold_map(const GrayImage& img, double t) {
  BinaryMap out(img.width(), img.height());
  auto src = img.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] >= t ? 1 : 0;
  return out;
}

/// Half-widths of the Euclidean disk of radius r: entry dy + r is the largest
/// dx with dx^2 + dy^2 <= r^2.
inline std::vector<int> disk_half_widths(int r) {
  std::vector<int> widths(static_cast<std::size_t>(2 * r + 1));
  const long long r2 = static_cast<long long>(r) * r;
  for (int dy = -r; dy <= r; ++dy) {
    int dx = 0;
    while (static_cast<long long>(dx + 1) * (dx + 1) + static_cast<long long>(dy) * dy <= r2) ++dx;
    widths[static_cast<std::size_t>(dy + r)] = dx;
  }
  return widths;
}

/// Morphological dilation by the integer-lattice disk dx^2 + dy^2 <= r^2.
inline BinaryMap dilate_disk(const BinaryMap& map, int r) {
  detail::require(r >= 0, "dilation radius must be nonnegative");
  if (r == 0) return map;
  const std::vector<int> half = disk_half_widths(r);
  BinaryMap out(map.width(), map.height());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (!map(x, y)) continue;
      for (int dy = -r; dy <= r; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= map.height()) continue;
        const int w = half[static_cast<std::size_t>(dy + r)];
        const int x0 = std::max(0, x - w);
        const int x1 = std::min(map.width() - 1, x + w);
        for (int xx = x0; xx <= x1; ++xx) out(xx, yy) = 1;
      }
    }
  }
  return out;
}

/// Integer pixels of the 8-connected Bresenham line between two pixels.
/// The trace always starts at the lexicographically smaller endpoint so that
/// a->b and b->a give the same set.
inline std::vector<PixelCoord> bresenham(PixelCoord a, PixelCoord b) {
  if (b < a) std::swap(a, b);
  std::vector<PixelCoord> out;
  const long long dx = std::llabs(static_cast<long long>(b.x) - a.x);
  const long long dy = -std::llabs(static_cast<long long>(b.y) - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  long long err = dx + dy;
  int x = a.x;
  int y = a.y;
  out.reserve(static_cast<std::size_t>(std::max(dx, -dy) + 1));
  for (;;) {
    out.push_back({x, y});
    if (x == b.x && y == b.y) break;
    const long long e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
  return out;
}

inline PixelCoord round_to_pixel(Point2 p) {
  return {static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
}

/// Sets the Bresenham pixels of `seg` (endpoints rounded to the nearest pixel)
/// that fall on `map`.
inline void draw_segment(BinaryMap& map, const LineSegment& seg) {
  if (!std::isfinite(seg.p1.x) || !std::isfinite(seg.p1.y) || !std::isfinite(seg.p2.x) ||
      !std::isfinite(seg.p2.y))
    return;
  for (PixelCoord p : bresenham(round_to_pixel(seg.p1), round_to_pixel(seg.p2)))
    if (map.in_bounds(p)) map[p] = 1;
}

inline BinaryMap rasterize_segment(const LineSegment& seg, int width, int height) {
  BinaryMap out(width, height);
  draw_segment(out, seg);
  return out;
}

/// Union raster of a segment list.
inline BinaryMap rasterize_segments(std::span<const LineSegment> segs, int width, int height) {
  BinaryMap out(width, height);
  for (const LineSegment& s : segs) draw_segment(out, s);
  return out;
}

/// Rotates a raster by +90 degrees in image coordinates: (x, y) maps to
/// (height - 1 - y, x), so offsets (dx, dy) become (-dy, dx).
template <typename T>
Raster<T> rotate90(const Raster<T>& in) {
  Raster<T> out(in.height(), in.width());
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) out(in.height() - 1 - y, x) = in(x, y);
  return out;
}

inline Point2 rotate90_point(Point2 p, int source_height) {
  return {static_cast<double>(source_height - 1) - p.y, p.x};
}

}  // namespace airline
