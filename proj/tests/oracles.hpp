#pragma once

// Independent reference implementations used only by tests.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "airline/geometry.hpp"
#include "airline/orientation.hpp"
#include "airline/raster.hpp"

namespace airline::oracle {

inline BinaryMap random_map(std::mt19937& rng, int w, int h, double density) {
  std::bernoulli_distribution on(density);
  BinaryMap m(w, h);
  for (auto& b : m.values()) b = on(rng) ? 1 : 0;
  return m;
}

/// Per-pixel minimum squared Euclidean distance to any set pixel <= r^2.
inline BinaryMap dilate_brute_force(const BinaryMap& m, int r) {
  BinaryMap out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      long long best = -1;
      for (int yy = 0; yy < m.height(); ++yy)
        for (int xx = 0; xx < m.width(); ++xx) {
          if (!m(xx, yy)) continue;
          const long long d = 1LL * (x - xx) * (x - xx) + 1LL * (y - yy) * (y - yy);
          if (best < 0 || d < best) best = d;
        }
      out(x, y) = (best >= 0 && best <= 1LL * r * r) ? 1 : 0;
    }
  return out;
}

/// LP_r by scanning, for every ground-truth pixel, all prediction pixels.
inline double line_precision_brute_force(const BinaryMap& pred, const BinaryMap& gt, int r) {
  std::size_t hit = 0, total = 0;
  for (int y = 0; y < gt.height(); ++y)
    for (int x = 0; x < gt.width(); ++x) {
      if (!gt(x, y)) continue;
      ++total;
      bool covered = false;
      for (int yy = 0; yy < pred.height() && !covered; ++yy)
        for (int xx = 0; xx < pred.width() && !covered; ++xx)
          if (pred(xx, yy) && (x - xx) * (x - xx) + (y - yy) * (y - yy) <= r * r) covered = true;
      if (covered) ++hit;
    }
  return static_cast<double>(hit) / static_cast<double>(total);
}

/// Direct quadruple loop: kernel pixel (kx, ky) reads edge pixel
/// (x + kx - h, y + ky - h), zero outside the raster.
inline std::vector<int> naive_convolution(const BinaryMap& edges, const KernelBank& bank) {
  const int n = bank.channels();
  const int k = bank.kernel_size();
  const int h = k / 2;
  std::vector<int> out(edges.size() * static_cast<std::size_t>(n), 0);
  for (int y = 0; y < edges.height(); ++y)
    for (int x = 0; x < edges.width(); ++x)
      for (int c = 0; c < n; ++c) {
        int acc = 0;
        for (int ky = 0; ky < k; ++ky)
          for (int kx = 0; kx < k; ++kx) {
            const int ex = x + kx - h, ey = y + ky - h;
            if (ex < 0 || ey < 0 || ex >= edges.width() || ey >= edges.height()) continue;
            acc += bank.kernel(c)(kx, ky) * edges(ex, ey);
          }
        out[edges.index(x, y) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)] = acc;
      }
  return out;
}

struct PrincipalAxis {
  Point2 direction;
  double eigen_ratio;  // major / minor eigenvalue of the covariance
};

/// Closed-form 2x2 covariance eigen-decomposition.
inline PrincipalAxis principal_axis(const std::vector<Point2>& pts) {
  Point2 c{0, 0};
  for (Point2 p : pts) c = c + p;
  c = (1.0 / pts.size()) * c;
  double sxx = 0, sxy = 0, syy = 0;
  for (Point2 p : pts) {
    const Point2 d = p - c;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double mean = 0.5 * (sxx + syy);
  const double rad = std::sqrt(0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy);
  const double lo = mean - rad;
  return {{std::cos(angle), std::sin(angle)}, lo > 0 ? (mean + rad) / lo : 1e300};
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("airline_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline bool is_8_connected(const std::vector<PixelCoord>& px) {
  if (px.empty()) return true;
  std::vector<bool> seen(px.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < px.size(); ++j) {
      if (seen[j]) continue;
      if (std::abs(px[i].x - px[j].x) <= 1 && std::abs(px[i].y - px[j].y) <= 1) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == px.size();
}

}  // namespace airline::oracle
