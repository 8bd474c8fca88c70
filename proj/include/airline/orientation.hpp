#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "airline/error.hpp"
#include "airline/geometry.hpp"
#include "airline/raster.hpp"

namespace airline {

struct OrientationConfig {
  int channels = 6;
  int kernel_size = 9;

  void validate() const {
    if (channels < 2) throw ConfigError("orient.channels must be >= 2");
    if (kernel_size < 3 || kernel_size % 2 == 0) throw ConfigError("orient.kernel_size must be odd and >= 3");
  }
};

/// N binary K x K kernels; kernel n holds a 1-pixel digital line through the
/// centre at n * 180 / N degrees, measured from +x toward +y.
class KernelBank {
 public:
  KernelBank() = default;
  KernelBank(int kernel_size, std::vector<BinaryMap> kernels) : size_(kernel_size), kernels_(std::move(kernels)) {
    offsets_.reserve(kernels_.size());
    const int h = size_ / 2;
    for (const BinaryMap& k : kernels_) {
      std::vector<PixelCoord> offs;
      for (int y = 0; y < size_; ++y)
        for (int x = 0; x < size_; ++x)
          if (k(x, y)) offs.push_back({x - h, y - h});
      offsets_.push_back(std::move(offs));
    }
  }

  int channels() const { return static_cast<int>(kernels_.size()); }
  int kernel_size() const { return size_; }
  const BinaryMap& kernel(int n) const { return kernels_[static_cast<std::size_t>(n)]; }
  /// Set pixels of kernel n as offsets from the centre, row-major.
  std::span<const PixelCoord> offsets(int n) const { return offsets_[static_cast<std::size_t>(n)]; }
  double angle_deg(int n) const { return 180.0 * n / channels(); }

 private:
  int size_ = 0;
  std::vector<BinaryMap> kernels_;
  std::vector<std::vector<PixelCoord>> offsets_;
};

namespace detail {

// Point-symmetric digital line for 0 <= theta < 90 degrees: one pixel per
// step along the major axis, minor coordinate rounded half away from zero.
inline BinaryMap digital_line_kernel(int k, double theta_deg) {
  BinaryMap kernel(k, k);
  const int h = k / 2;
  const double t = theta_deg * 3.14159265358979323846 / 180.0;
  const double c = std::cos(t);
  const double s = std::sin(t);
  if (s <= c) {
    const double slope = s / c;
    for (int i = -h; i <= h; ++i) kernel(h + i, h + static_cast<int>(std::round(i * slope))) = 1;
  } else {
    const double slope = c / s;
    for (int i = -h; i <= h; ++i) kernel(h + static_cast<int>(std::round(i * slope)), h + i) = 1;
  }
  return kernel;
}

}  // namespace detail

inline KernelBank build_kernel_bank(int n, int k) {
  detail::require(n >= 2, "kernel bank needs at least 2 orientations");
  detail::require(k >= 3 && k % 2 == 1, "kernel size must be odd and >= 3");
  std::vector<BinaryMap> kernels;
  kernels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Integer arithmetic keeps the 90-degree boundary exact: theta >= 90
    // exactly when 2 * i >= n.
    if (2 * i < n) {
      kernels.push_back(detail::digital_line_kernel(k, 180.0 * i / n));
    } else {
      const double base = 180.0 * i / n - 90.0;
      kernels.push_back(rotate90(detail::digital_line_kernel(k, base)));
    }
  }
  return KernelBank(k, std::move(kernels));
}

inline KernelBank build_kernel_bank(const OrientationConfig& cfg) {
  return build_kernel_bank(cfg.channels, cfg.kernel_size);
}

/// Unit-normalized (or zero) N-vector per pixel, pixel-major.
class DescriptorMap {
 public:
  DescriptorMap() = default;
  DescriptorMap(int width, int height, int channels)
      : width_(width), height_(height), channels_(channels),
        values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                    static_cast<std::size_t>(channels),
                0.0f) {}

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }

  std::span<float> at(int x, int y) {
    return std::span<float>(values_).subspan(offset(x, y), static_cast<std::size_t>(channels_));
  }
  std::span<const float> at(int x, int y) const {
    return std::span<const float>(values_).subspan(offset(x, y), static_cast<std::size_t>(channels_));
  }
  std::span<const float> at(PixelCoord p) const { return at(p.x, p.y); }

  bool same_shape(const auto& other) const { return width_ == other.width() && height_ == other.height(); }

  friend bool operator==(const DescriptorMap&, const DescriptorMap&) = default;

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(channels_);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> values_;
};

/// Raw convolution counts at one pixel: set edge pixels under each kernel
/// line, zero outside the raster.
inline void response_at(const BinaryMap& edges, const KernelBank& bank, int x, int y, std::span<int> out) {
  for (int n = 0; n < bank.channels(); ++n) {
    int count = 0;
    for (PixelCoord o : bank.offsets(n)) count += edges.at_or(x + o.x, y + o.y, 0) ? 1 : 0;
    out[static_cast<std::size_t>(n)] = count;
  }
}

/// Raw counts for every pixel and channel, pixel-major. Used for debug maps
/// and for checking the descriptor stage against a direct convolution.
inline std::vector<int> orientation_responses(const BinaryMap& edges, const KernelBank& bank) {
  const std::size_t n = static_cast<std::size_t>(bank.channels());
  std::vector<int> out(edges.size() * n);
  for (int y = 0; y < edges.height(); ++y)
    for (int x = 0; x < edges.width(); ++x)
      response_at(edges, bank, x, y, std::span<int>(out).subspan(edges.index(x, y) * n, n));
  return out;
}

/// L2-normalized kernel responses at edge pixels; all other pixels carry the
/// zero vector.
inline DescriptorMap compute_descriptors(const BinaryMap& edges, const KernelBank& bank) {
  const int n = bank.channels();
  DescriptorMap out(edges.width(), edges.height(), n);
  std::vector<int> raw(static_cast<std::size_t>(n));
  for (int y = 0; y < edges.height(); ++y)
    for (int x = 0; x < edges.width(); ++x) {
      if (!edges(x, y)) continue;
      response_at(edges, bank, x, y, raw);
      long long sq = 0;
      for (int c : raw) sq += static_cast<long long>(c) * c;
      if (sq == 0) continue;
      const double inv = 1.0 / std::sqrt(static_cast<double>(sq));
      auto d = out.at(x, y);
      for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = static_cast<float>(raw[static_cast<std::size_t>(i)] * inv);
    }
  return out;
}

}  // namespace airline
