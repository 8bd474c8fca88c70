#pragma once

#include <chrono>
#include <vector>

#include "airline/edge_source.hpp"
#include "airline/error.hpp"
#include "airline/line_param.hpp"
#include "airline/orientation.hpp"
#include "airline/raster.hpp"
#include "airline/region_grow.hpp"

namespace airline {

struct PipelineConfig {
  EdgeSourceConfig edge;
  OrientationConfig orient;
  CrgConfig crg;

  void validate() const {
    edge.validate();
    orient.validate();
    crg.validate();
  }
};

/// Wall time per pipeline stage, in seconds.
struct StageTimings {
  double edge = 0.0;  // edge source, thresholding and edge dilation
  double orientation = 0.0;
  double region_grow = 0.0;
  double parameterization = 0.0;

  double total() const { return edge + orientation + region_grow + parameterization; }
};

/// Everything a single detection produced, for debug output.
struct Detection {
  GrayImage edge_map;
  BinaryMap edges;
  std::vector<Region> regions;
  std::vector<LineSegment> segments;
};

/// Edge map -> threshold -> edge dilation -> orientation descriptors ->
/// region grow -> parameterization. Holds the kernel bank so repeated frames reuse it.
class LineDetector {
 public:
  explicit LineDetector(PipelineConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    bank_ = build_kernel_bank(cfg_.orient);
  }

  const PipelineConfig& config() const { return cfg_; }
  const KernelBank& bank() const { return bank_; }

  /// Runs the post-edge stages on a precomputed edge-probability map.
  Detection run_on_edge_map(GrayImage edge_map, StageTimings* timings = nullptr) const {
    Detection out;
    Clock clock;
    out.edge_map = std::move(edge_map);
    out.edges = binarize(out.edge_map);
    clock.lap(timings ? &timings->edge : nullptr);
    finish(out, clock, timings);
    return out;
  }

  /// Runs the full pipeline, including the configured edge source.
  Detection run(const GrayImage& image, StageTimings* timings = nullptr) const {
    detail::require(!image.empty(), "detect_lines needs a nonempty image");
    Detection out;
    Clock clock;
    out.edge_map = compute_edge_map(image, cfg_.edge);
    out.edges = binarize(out.edge_map);
    clock.lap(timings ? &timings->edge : nullptr);
    finish(out, clock, timings);
    return out;
  }

 private:
  struct Clock {
    std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
    void lap(double* slot) {
      const auto now = std::chrono::steady_clock::now();
      if (slot) *slot += std::chrono::duration<double>(now - last).count();
      last = now;
    }
  };

  BinaryMap binarize(const GrayImage& edge_map) const {
    return dilate_disk(threshold_map(edge_map, cfg_.edge.edge_threshold), cfg_.edge.edge_dilation);
  }

  void finish(Detection& out, Clock& clock, StageTimings* timings) const {
    const DescriptorMap desc = compute_descriptors(out.edges, bank_);
    clock.lap(timings ? &timings->orientation : nullptr);
    out.regions = conditional_region_grow(out.edges, desc, cfg_.crg);
    clock.lap(timings ? &timings->region_grow : nullptr);
    out.segments.reserve(out.regions.size());
    for (const Region& r : out.regions) out.segments.push_back(parameterize_region(r));
    clock.lap(timings ? &timings->parameterization : nullptr);
  }

  PipelineConfig cfg_;
  KernelBank bank_;
};

inline std::vector<LineSegment> detect_lines(const GrayImage& image, const PipelineConfig& cfg) {
  return LineDetector(cfg).run(image).segments;
}

inline std::vector<LineSegment> detect_lines_from_edge_map(const GrayImage& edge_map, const PipelineConfig& cfg) {
  return LineDetector(cfg).run_on_edge_map(edge_map).segments;
}

}  // namespace airline
