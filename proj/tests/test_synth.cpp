#include <gtest/gtest.h>

#include "airline/synth.hpp"

namespace airline {
namespace {

// Dense sampling of both segments; independent of segment_distance's
// closed-form case analysis.
double sampled_distance(const LineSegment& a, const LineSegment& b) {
  constexpr int kSteps = 400;
  double best = 1e300;
  for (int i = 0; i <= kSteps; ++i) {
    const Point2 p = a.p1 + (double(i) / kSteps) * (a.p2 - a.p1);
    for (int j = 0; j <= kSteps; ++j) best = std::min(best, distance(p, b.p1 + (double(j) / kSteps) * (b.p2 - b.p1)));
  }
  return best;
}

TEST(Synth, SingleSegmentRendering) {
  SynthParams p;
  p.width = p.height = 256;
  p.count = 1;
  p.seed = 42;
  const SynthScene s = generate_scene(p);
  ASSERT_EQ(s.segments.size(), 1u);
  const auto px = bresenham(round_to_pixel(s.segments[0].p1), round_to_pixel(s.segments[0].p2));
  std::size_t lit = 0;
  for (double v : s.edge_map.values()) lit += v == 1.0;
  EXPECT_EQ(lit, px.size());
  for (double v : s.edge_map.values()) EXPECT_TRUE(v == 0.0 || v == 1.0);
}

TEST(Synth, DeterministicForSeed) {
  SynthParams p;
  p.seed = 9;
  const SynthScene a = generate_scene(p), b = generate_scene(p);
  EXPECT_EQ(a.segments, b.segments);
  EXPECT_EQ(a.edge_map, b.edge_map);
  p.seed = 10;
  EXPECT_NE(generate_scene(p).segments, a.segments);
}

TEST(Synth, SeparationLengthAndBounds) {
  SynthParams p;
  p.count = 20;
  p.seed = 3;
  const SynthScene s = generate_scene(p);
  ASSERT_EQ(s.segments.size(), 20u);
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const LineSegment& a = s.segments[i];
    EXPECT_GE(a.length(), p.min_len);
    for (Point2 e : {a.p1, a.p2}) {
      EXPECT_GE(e.x, 0);
      EXPECT_GE(e.y, 0);
      EXPECT_LE(e.x, p.width - 1);
      EXPECT_LE(e.y, p.height - 1);
    }
    for (std::size_t j = i + 1; j < s.segments.size(); ++j) {
      const double d = sampled_distance(a, s.segments[j]);
      EXPECT_GE(d, 10.0 - 0.1);
      EXPECT_NEAR(segment_distance(a, s.segments[j]), d, 0.1);
    }
  }
}

TEST(Synth, CrossingSegmentsHaveZeroDistance) {
  EXPECT_EQ(segment_distance(make_segment({0, 0}, {10, 10}), make_segment({0, 10}, {10, 0})), 0.0);
  EXPECT_DOUBLE_EQ(segment_distance(make_segment({0, 0}, {10, 0}), make_segment({5, 3}, {5, 9})), 3.0);
}

TEST(Synth, CapacityError) {
  SynthParams p;
  p.width = p.height = 64;
  p.count = 10000;
  try {
    generate_scene(p);
    FAIL();
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find("fewer segments"), std::string::npos);
  }
}

TEST(ScoreRecovery, Examples) {
  SynthParams p;
  p.seed = 1;
  const SynthScene s = generate_scene(p);
  const RecoveryStats exact = score_recovery(s.segments, s.segments, 3, 2);
  EXPECT_DOUBLE_EQ(exact.recovered_fraction, 1.0);
  EXPECT_DOUBLE_EQ(exact.mean_endpoint_error, 0.0);
  EXPECT_DOUBLE_EQ(exact.mean_angle_error, 0.0);

  EXPECT_DOUBLE_EQ(score_recovery({}, s.segments, 3, 2).recovered_fraction, 0.0);

  const std::vector<LineSegment> gt{make_segment({10, 10}, {60, 10})};
  const std::vector<LineSegment> det{make_segment({10, 11}, {60, 11})};
  const RecoveryStats off = score_recovery(det, gt, 3, 2);
  EXPECT_DOUBLE_EQ(off.recovered_fraction, 1.0);
  EXPECT_NEAR(off.mean_endpoint_error, 1.0, 1e-12);
  EXPECT_NEAR(off.mean_angle_error, 0.0, 1e-12);

  // Reversed endpoints still pair up.
  const std::vector<LineSegment> rev{make_segment({60, 10}, {10, 10})};
  EXPECT_DOUBLE_EQ(score_recovery(rev, gt, 0.5, 0.5).recovered_fraction, 1.0);
  // Outside the angle tolerance.
  const std::vector<LineSegment> tilted{make_segment({10, 8}, {60, 12})};
  EXPECT_DOUBLE_EQ(score_recovery(tilted, gt, 3, 2).recovered_fraction, 0.0);
}

}  // namespace
}  // namespace airline
