#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "airline/error.hpp"
#include "airline/image_io.hpp"
#include "airline/raster.hpp"

namespace airline {

enum class EdgeSourceKind { gradient, file };

inline std::string to_string(EdgeSourceKind k) { return k == EdgeSourceKind::gradient ? "gradient" : "file"; }

inline EdgeSourceKind parse_edge_source_kind(const std::string& s) {
  if (s == "gradient") return EdgeSourceKind::gradient;
  if (s == "file") return EdgeSourceKind::file;
  throw ConfigError("edge source must be 'gradient' or 'file', got '" + s + "'");
}

struct EdgeSourceConfig {
  EdgeSourceKind kind = EdgeSourceKind::gradient;
  double gradient_smoothing = 1.0;  // Gaussian sigma in pixels; 0 disables smoothing
  double edge_threshold = 0.5;
  // Disk radius applied to the thresholded map so thin (1-pixel) edges reach
  // the orientation stage as bands like a learned detector produces.
  int edge_dilation = 2;
  std::optional<std::filesystem::path> file_path;

  void validate() const {
    if (!(edge_threshold >= 0.0 && edge_threshold <= 1.0))
      throw ConfigError("edge.threshold must lie in [0,1]");
    if (!(gradient_smoothing >= 0.0)) throw ConfigError("edge.sigma must be >= 0");
    if (edge_dilation < 0) throw ConfigError("edge.dilate must be >= 0");
  }
};

struct MaskedBceParams {
  double w = 0.8;
  int r = 5;
};

namespace detail {

inline std::vector<double> gaussian_taps(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

}  // namespace detail

/// Separable Gaussian blur with replicated borders.
inline GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (sigma <= 0.0 || img.empty()) return img;
  const std::vector<double> taps = detail::gaussian_taps(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = img.width();
  const int h = img.height();
  GrayImage tmp(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += taps[static_cast<std::size_t>(k + radius)] * img(detail::clamp_index(x + k, w), y);
      tmp(x, y) = acc;
    }
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += taps[static_cast<std::size_t>(k + radius)] * tmp(x, detail::clamp_index(y + k, h));
      out(x, y) = std::clamp(acc, 0.0, 1.0);
    }
  return out;
}

/// Sobel gradient magnitude (replicated borders) rescaled by its global
/// maximum. Flat images give an all-zero map.
inline GrayImage gradient_edges(const GrayImage& img, const EdgeSourceConfig& cfg) {
  detail::require(cfg.kind == EdgeSourceKind::gradient, "gradient_edges needs a gradient edge source");
  const GrayImage src = gaussian_blur(img, cfg.gradient_smoothing);
  const int w = src.width();
  const int h = src.height();
  GrayImage mag(w, h);
  auto px = [&](int x, int y) { return src(detail::clamp_index(x, w), detail::clamp_index(y, h)); };
  double peak = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
      const double gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
      const double m = std::sqrt(gx * gx + gy * gy);
      mag(x, y) = m;
      peak = std::max(peak, m);
    }
  // Sub-epsilon peaks are rounding noise from a flat image.
  if (peak <= 1e-12) return GrayImage(w, h, 0.0);
  for (double& v : mag.values()) v = std::clamp(v / peak, 0.0, 1.0);
  return mag;
}

/// Loads an externally produced edge-probability map and checks that it
/// matches the frame it belongs to.
inline GrayImage load_edge_map(const std::filesystem::path& path, int expected_width, int expected_height) {
  GrayImage map = load_gray(path);
  if (map.width() != expected_width || map.height() != expected_height)
    throw ConfigError("edge map '" + path.string() + "' is " + std::to_string(map.width()) + "x" +
                      std::to_string(map.height()) + " but the frame is " + std::to_string(expected_width) +
                      "x" + std::to_string(expected_height));
  return map;
}

inline GrayImage load_edge_map(const std::filesystem::path& path) { return load_gray(path); }

/// Edge-probability map for `img` according to `cfg`.
inline GrayImage compute_edge_map(const GrayImage& img, const EdgeSourceConfig& cfg) {
  if (cfg.kind == EdgeSourceKind::gradient) return gradient_edges(img, cfg);
  if (!cfg.file_path) throw ConfigError("edge.kind=file requires edge.file");
  return load_edge_map(*cfg.file_path, img.width(), img.height());
}

inline constexpr double kBceEpsilon = 1e-7;

/// Weighted masked binary cross entropy, averaged over pixels. Pixels inside
/// the ground truth dilated by r weigh 1; all others weigh 1 - w.
inline double masked_bce_loss(const GrayImage& x, const BinaryMap& y, const MaskedBceParams& p) {
  if (!x.same_shape(y)) throw ContractError("masked_bce_loss: prediction and ground truth differ in size");
  detail::require(p.w >= 0.0 && p.w <= 1.0, "mask weight must lie in [0,1]");
  if (x.empty()) return 0.0;
  const BinaryMap mask = dilate_disk(y, p.r);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = std::clamp(x.values()[i], kBceEpsilon, 1.0 - kBceEpsilon);
    const double bce = y.values()[i] ? -std::log(xi) : -std::log(1.0 - xi);
    const double weight = (1.0 - p.w) + p.w * (mask.values()[i] ? 1.0 : 0.0);
    total += weight * bce;
  }
  return total / static_cast<double>(x.size());
}

}  // namespace airline
