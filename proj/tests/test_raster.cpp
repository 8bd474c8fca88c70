#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "airline/image_io.hpp"
#include "airline/raster.hpp"
#include "oracles.hpp"

namespace airline {
namespace {

BinaryMap single_pixel(int w, int h, int x, int y) {
  BinaryMap m(w, h);
  m(x, y) = 1;
  return m;
}

TEST(Raster, RejectsMismatchedData) {
  EXPECT_THROW(GrayImage(2, 2, std::vector<double>(3)), ContractError);
  EXPECT_THROW(make_gray(1, 1, {1.5}), ContractError);
}

TEST(Threshold, IsInclusive) {
  EXPECT_EQ(count_true(threshold_map(GrayImage(4, 4, 0.0), 0.5)), 0u);
  const BinaryMap m = threshold_map(make_gray(2, 1, {0.4, 0.6}), 0.5);
  EXPECT_EQ(m(0, 0), 0);
  EXPECT_EQ(m(1, 0), 1);
  EXPECT_EQ(threshold_map(make_gray(1, 1, {0.5}), 0.5)(0, 0), 1);
}

TEST(Dilate, DiskSizes) {
  EXPECT_EQ(count_true(dilate_disk(single_pixel(11, 11, 5, 5), 1)), 5u);
  // Offsets with dx^2 + dy^2 <= 4: centre, 4 axis at 1, 4 diagonal, 4 axis at 2.
  EXPECT_EQ(count_true(dilate_disk(single_pixel(11, 11, 5, 5), 2)), 13u);
}

TEST(Dilate, ZeroRadiusIsIdentity) {
  std::mt19937 rng(3);
  const BinaryMap m = oracle::random_map(rng, 17, 9, 0.2);
  EXPECT_EQ(dilate_disk(m, 0), m);
  EXPECT_THROW(dilate_disk(m, -1), ContractError);
}

TEST(Dilate, MatchesBruteForceOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMap m = oracle::random_map(rng, 32, 32, 0.02 + 0.01 * (trial % 5));
    for (int r : {0, 1, 2, 3, 5}) ASSERT_EQ(dilate_disk(m, r), oracle::dilate_brute_force(m, r)) << trial << " r=" << r;
  }
}

TEST(Dilate, ExtensiveAndMonotone) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryMap m = oracle::random_map(rng, 24, 20, 0.05);
    BinaryMap prev = m;
    for (int r = 1; r <= 6; ++r) {
      const BinaryMap cur = dilate_disk(m, r);
      for (std::size_t i = 0; i < m.size(); ++i) ASSERT_GE(cur.values()[i], prev.values()[i]);
      prev = cur;
    }
  }
}

std::vector<PixelCoord> set_pixels(const BinaryMap& m) { return true_pixels(m); }

TEST(Rasterize, Examples) {
  EXPECT_EQ(set_pixels(rasterize_segment(make_segment({0, 0}, {3, 3}), 4, 4)),
            (std::vector<PixelCoord>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  const auto row = set_pixels(rasterize_segment(make_segment({0, 5}, {9, 5}), 10, 10));
  ASSERT_EQ(row.size(), 10u);
  for (int x = 0; x < 10; ++x) EXPECT_EQ(row[static_cast<std::size_t>(x)], (PixelCoord{x, 5}));

  // y = round(4x/9) has no ties on x = 0..9.
  const BinaryMap m = rasterize_segment(make_segment({0, 0}, {9, 4}), 10, 10);
  ASSERT_EQ(count_true(m), 10u);
  const int expected_rows[] = {0, 0, 1, 1, 2, 2, 3, 3, 4, 4};
  for (int x = 0; x < 10; ++x) EXPECT_EQ(m(x, expected_rows[x]), 1) << x;
}

TEST(Rasterize, ClipsAndRounds) {
  const BinaryMap m = rasterize_segment(make_segment({-5.2, 2.4}, {4.6, 2.4}), 4, 4);
  EXPECT_EQ(set_pixels(m), (std::vector<PixelCoord>{{0, 2}, {1, 2}, {2, 2}, {3, 2}}));
}

TEST(Rasterize, SymmetricConnectedAndContainsEndpoints) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> coord(-3.0, 34.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Point2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
    const BinaryMap ab = rasterize_segment(make_segment(a, b), 32, 32);
    const BinaryMap ba = rasterize_segment(make_segment(b, a), 32, 32);
    ASSERT_EQ(ab, ba);
    const auto full = bresenham(round_to_pixel(a), round_to_pixel(b));
    ASSERT_TRUE(oracle::is_8_connected(full));
    for (PixelCoord e : {round_to_pixel(a), round_to_pixel(b)})
      if (ab.in_bounds(e)) {
        ASSERT_EQ(ab[e], 1);
      }
  }
}

TEST(Rotate90, MapsOffsets) {
  BinaryMap m(5, 3);
  m(4, 0) = 1;
  const BinaryMap r = rotate90(m);
  EXPECT_EQ(r.width(), 3);
  EXPECT_EQ(r.height(), 5);
  EXPECT_EQ(r(2, 4), 1);
}

class ImageIo : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = oracle::fresh_dir("imageio"); }
  std::filesystem::path write(const std::string& name, const std::string& bytes) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << bytes;
    return p;
  }
  std::filesystem::path dir_;
};

TEST_F(ImageIo, ReadsAsciiAndBinaryPgm) {
  const auto ascii = write("a.pgm", "P2\n# comment\n2 2\n255\n0 255\n128 64\n");
  GrayImage g = load_gray(ascii);
  ASSERT_EQ(g.width(), 2);
  EXPECT_DOUBLE_EQ(g(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(g(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(g(0, 1), 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(g(1, 1), 64.0 / 255.0);

  std::string p5 = "P5\n2 2\n255\n";
  p5 += std::string{char(0), char(255), char(128), char(64)};
  EXPECT_EQ(load_gray(write("b.pgm", p5)), g);
}

TEST_F(ImageIo, ErrorPaths) {
  EXPECT_THROW(load_gray(write("empty.pgm", "")), FormatError);
  EXPECT_THROW(load_gray(dir_ / "missing.pgm"), IoError);
  try {
    load_gray(write("color.ppm", "P6\n1 1\n255\nabc"));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("P6"), std::string::npos);
  }
  EXPECT_THROW(load_gray(write("trunc.pgm", "P5\n4 4\n255\nab")), FormatError);
  EXPECT_THROW(load_gray(write("deep.pgm", "P2\n1 1\n65535\n7\n")), FormatError);
}

TEST_F(ImageIo, PngGrayAndColor) {
  GrayImage img(512, 512, 0.0);
  img(10, 20) = 1.0;
  img(11, 20) = 128.0 / 255.0;
  write_png(dir_ / "g.png", img);
  const GrayImage back = load_gray(dir_ / "g.png");
  EXPECT_EQ(back.width(), 512);
  EXPECT_EQ(back.height(), 512);
  EXPECT_EQ(back, img);

  // Hand-built 1x1 RGB PNG (30, 60, 90) via libpng's simplified writer.
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = 1;
  image.height = 1;
  image.format = PNG_FORMAT_RGB;
  const png_byte rgb[3] = {30, 60, 90};
  ASSERT_TRUE(png_image_write_to_file(&image, (dir_ / "c.png").string().c_str(), 0, rgb, 0, nullptr));
  EXPECT_NEAR(load_gray(dir_ / "c.png")(0, 0), 60.0 / 255.0, 1e-12);
}

TEST_F(ImageIo, PgmWriterRoundTrips) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> level(0, 255);
  GrayImage img(7, 5);
  for (double& v : img.values()) v = level(rng) / 255.0;
  write_pgm(dir_ / "rt.pgm", img);
  const GrayImage back = load_gray(dir_ / "rt.pgm");
  ASSERT_EQ(back.width(), 7);
  for (std::size_t i = 0; i < img.size(); ++i) EXPECT_NEAR(back.values()[i], img.values()[i], 1e-12);
}

}  // namespace
}  // namespace airline
