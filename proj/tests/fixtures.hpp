#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "airline/geometry.hpp"
#include "airline/raster.hpp"

namespace airline::fixture {

/// Two 40-pixel arms sharing the corner pixel (10, 10): one runs along the
/// row y = 10, the other down the column x = 10. The corner is the first
/// pixel in row-major order, so both arms grow from it together.
struct LShape {
  BinaryMap edges{64, 64};
  PixelCoord corner{10, 10};
  std::vector<PixelCoord> horizontal, vertical;
};

inline LShape l_shape() {
  LShape l;
  for (int i = 0; i < 40; ++i) {
    l.horizontal.push_back({10 + i, 10});
    l.vertical.push_back({10, 10 + i});
  }
  for (PixelCoord p : l.horizontal) l.edges[p] = 1;
  for (PixelCoord p : l.vertical) l.edges[p] = 1;
  return l;
}

/// The same shape turned by `quarter_turns` x 90 degrees. The corner then
/// comes after one arm in row-major order.
inline LShape rotated(LShape l, int quarter_turns) {
  for (int t = 0; t < quarter_turns; ++t) {
    const int h = l.edges.height();
    auto turn = [h](PixelCoord p) { return PixelCoord{h - 1 - p.y, p.x}; };
    l.corner = turn(l.corner);
    for (PixelCoord& p : l.horizontal) p = turn(p);
    for (PixelCoord& p : l.vertical) p = turn(p);
    l.edges = rotate90(l.edges);
  }
  return l;
}

inline int chebyshev(PixelCoord a, PixelCoord b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

/// Largest corner distance of an arm pixel that is missing from its arm's
/// region, or of a region pixel that belongs to the other arm. An arm's
/// region is the one holding the arm pixel 20 steps from the corner. -1 if
/// either arm has no region or both arms share one.
template <class Regions>
int split_distance(const LShape& l, const Regions& regions) {
  auto owner = [&](PixelCoord p) {
    for (std::size_t i = 0; i < regions.size(); ++i)
      for (PixelCoord q : regions[i].pixels)
        if (q == p) return static_cast<int>(i);
    return -1;
  };
  const int a = owner(l.horizontal[20]);
  const int b = owner(l.vertical[20]);
  if (a < 0 || b < 0 || a == b) return -1;
  int worst = 0;
  for (PixelCoord p : l.horizontal)
    if (owner(p) != a) worst = std::max(worst, chebyshev(p, l.corner));
  for (PixelCoord p : l.vertical)
    if (owner(p) != b) worst = std::max(worst, chebyshev(p, l.corner));
  return worst;
}

/// Uniform points in a rotated rectangle with length/width ratio in [4, 12].
inline std::vector<Point2> elongated_cloud(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double pi = 3.14159265358979323846;
  const double theta = u(rng) * pi;
  const double len = 30.0 + 70.0 * u(rng);
  const double wid = len / (4.0 + 8.0 * u(rng));
  const Point2 d{std::cos(theta), std::sin(theta)};
  const Point2 nrm{-d.y, d.x};
  const Point2 origin{50.0 + 400.0 * u(rng), 50.0 + 400.0 * u(rng)};
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back(origin + (len * (u(rng) - 0.5)) * d + (wid * (u(rng) - 0.5)) * nrm);
  return pts;
}

}  // namespace airline::fixture
