#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "airline/error.hpp"
#include "airline/geometry.hpp"
#include "airline/raster.hpp"

namespace airline {

/// LP_r on rasters: fraction of set `gt` pixels covered by `pred` dilated by
/// a disk of radius r.
inline double line_precision(const BinaryMap& pred, const BinaryMap& gt, int r) {
  if (!pred.same_shape(gt)) throw ContractError("line_precision: rasters differ in size");
  const BinaryMap covered = dilate_disk(pred, r);
  std::size_t hits = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!gt.values()[i]) continue;
    ++total;
    if (covered.values()[i]) ++hits;
  }
  if (total == 0) throw UndefinedMetricError("LP is undefined: ground truth covers no pixel");
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline double line_precision(std::span<const LineSegment> pred, std::span<const LineSegment> gt, int width,
                             int height, int r) {
  return line_precision(rasterize_segments(pred, width, height), rasterize_segments(gt, width, height), r);
}

/// Structural-AP true-positive test: the better of the two endpoint
/// pairings has summed squared distance <= e.
inline bool endpoint_match(const LineSegment& pred, const LineSegment& gt, double e) {
  const double direct = squared_distance(gt.p1, pred.p1) + squared_distance(gt.p2, pred.p2);
  const double swapped = squared_distance(gt.p1, pred.p2) + squared_distance(gt.p2, pred.p1);
  return std::min(direct, swapped) <= e;
}

inline const std::vector<int>& default_radii() {
  static const std::vector<int> radii{0, 1, 2, 3, 5, 10};
  return radii;
}

struct ImageLp {
  std::string id;
  std::vector<double> lp;  // aligned with EvalReport::radii
};

struct EvalReport {
  std::vector<int> radii;
  std::vector<ImageLp> per_image;
  std::vector<double> aggregate;
  std::vector<std::string> skipped;  // ids with empty ground truth
};

/// Segments and raster size for one image.
struct ImageSegments {
  int width = 0;
  int height = 0;
  std::vector<LineSegment> lines;
};

using SegmentSet = std::map<std::string, ImageSegments>;

/// Per-image LP at each radius plus their unweighted mean over images. Raster
/// size is taken from the ground truth.
inline EvalReport evaluate_set(const SegmentSet& preds, const SegmentSet& gts, std::span<const int> radii) {
  std::vector<std::string> missing_pred;
  std::vector<std::string> missing_gt;
  for (const auto& [id, _] : gts)
    if (!preds.contains(id)) missing_pred.push_back(id);
  for (const auto& [id, _] : preds)
    if (!gts.contains(id)) missing_gt.push_back(id);
  if (!missing_pred.empty() || !missing_gt.empty()) {
    std::string msg = "image ids differ between predictions and ground truth;";
    if (!missing_pred.empty()) {
      msg += " missing predictions:";
      for (const auto& id : missing_pred) msg += " " + id;
      msg += ";";
    }
    if (!missing_gt.empty()) {
      msg += " missing ground truth:";
      for (const auto& id : missing_gt) msg += " " + id;
    }
    throw ConfigError(msg);
  }
  for (int r : radii) detail::require(r >= 0, "radii must be nonnegative");

  EvalReport report;
  report.radii.assign(radii.begin(), radii.end());
  report.aggregate.assign(radii.size(), 0.0);
  for (const auto& [id, gt] : gts) {
    const ImageSegments& pred = preds.at(id);
    const BinaryMap gt_raster = rasterize_segments(gt.lines, gt.width, gt.height);
    if (count_true(gt_raster) == 0) {
      report.skipped.push_back(id);
      continue;
    }
    const BinaryMap pred_raster = rasterize_segments(pred.lines, gt.width, gt.height);
    ImageLp row{id, {}};
    for (int r : radii) row.lp.push_back(line_precision(pred_raster, gt_raster, r));
    for (std::size_t i = 0; i < radii.size(); ++i) report.aggregate[i] += row.lp[i];
    report.per_image.push_back(std::move(row));
  }
  if (!report.per_image.empty())
    for (double& a : report.aggregate) a /= static_cast<double>(report.per_image.size());
  return report;
}

namespace detail {

inline std::string format_lp(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

inline std::string csv_header(std::span<const int> radii) {
  std::string out = "image";
  for (int r : radii) out += ",LP_" + std::to_string(r);
  return out;
}

inline std::string aggregate_row(const EvalReport& report) {
  std::string out = "AGGREGATE";
  for (double v : report.aggregate) out += "," + detail::format_lp(v);
  return out;
}

/// CSV with one row per evaluated image and a final AGGREGATE row.
inline std::string report_csv(const EvalReport& report) {
  std::string out = csv_header(report.radii) + "\n";
  for (const ImageLp& row : report.per_image) {
    out += row.id;
    for (double v : row.lp) out += "," + detail::format_lp(v);
    out += "\n";
  }
  out += aggregate_row(report) + "\n";
  return out;
}

}  // namespace airline
