#pragma once

#include <chrono>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "airline/error.hpp"
#include "airline/pipeline.hpp"

namespace airline {

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
};

inline Summary summarize(std::span<const double> xs) {
  Summary s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return s;
}

/// What to time for each frame: the whole pipeline on an image, or the
/// post-edge stages on a precomputed edge map.
struct BenchFrame {
  std::string name;
  GrayImage image;
  bool precomputed_edges = false;
};

struct BenchReport {
  int frames = 0;
  int iterations = 0;
  // Seconds per frame.
  Summary edge, orientation, region_grow, parameterization, end_to_end;
  Summary fps;
  std::size_t segments = 0;  // from the last timed iteration, summed over frames

  double stage_sum() const {
    return edge.mean + orientation.mean + region_grow.mean + parameterization.mean;
  }
};

/// Runs `warmup` untimed then `iterations` timed passes over every frame on
/// the calling thread.
inline BenchReport run_bench(const LineDetector& detector, std::span<const BenchFrame> frames, int warmup,
                             int iterations) {
  if (iterations < 1) throw ConfigError("bench needs at least one timed iteration");
  if (warmup < 0) throw ConfigError("bench warmup must be >= 0");
  if (frames.empty()) throw ConfigError("bench needs at least one frame");
  auto once = [&](const BenchFrame& f, StageTimings* t) {
    return f.precomputed_edges ? detector.run_on_edge_map(f.image, t) : detector.run(f.image, t);
  };
  for (int i = 0; i < warmup; ++i)
    for (const BenchFrame& f : frames) (void)once(f, nullptr);

  std::vector<double> edge, orient, crg, param, total, fps;
  BenchReport report;
  report.frames = static_cast<int>(frames.size());
  report.iterations = iterations;
  for (int i = 0; i < iterations; ++i) {
    std::size_t segments = 0;
    for (const BenchFrame& f : frames) {
      StageTimings t;
      const auto start = std::chrono::steady_clock::now();
      const Detection d = once(f, &t);
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      segments += d.segments.size();
      edge.push_back(t.edge);
      orient.push_back(t.orientation);
      crg.push_back(t.region_grow);
      param.push_back(t.parameterization);
      total.push_back(elapsed);
      fps.push_back(elapsed > 0.0 ? 1.0 / elapsed : 0.0);
    }
    report.segments = segments;
  }
  report.edge = summarize(edge);
  report.orientation = summarize(orient);
  report.region_grow = summarize(crg);
  report.parameterization = summarize(param);
  report.end_to_end = summarize(total);
  report.fps = summarize(fps);
  return report;
}

}  // namespace airline
