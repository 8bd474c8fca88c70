#pragma once

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "airline/error.hpp"
#include "airline/raster.hpp"

namespace airline {

namespace detail {

inline std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return bytes;
}

inline std::string sniff_format(const std::vector<unsigned char>& b) {
  static constexpr std::array<unsigned char, 8> kPng = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (b.empty()) return "empty file";
  if (b.size() >= 8 && std::equal(kPng.begin(), kPng.end(), b.begin())) return "PNG";
  if (b.size() >= 2 && b[0] == 'P' && b[1] >= '1' && b[1] <= '7') return std::string("P") + char(b[1]);
  if (b.size() >= 3 && b[0] == 0xff && b[1] == 0xd8 && b[2] == 0xff) return "JPEG";
  if (b.size() >= 2 && b[0] == 'B' && b[1] == 'M') return "BMP";
  return "unknown";
}

/// Cursor over a PNM header: whitespace-separated tokens with # comments.
class PnmReader {
 public:
  PnmReader(const std::vector<unsigned char>& bytes, std::string name)
      : bytes_(bytes), name_(std::move(name)) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      throw FormatError("malformed PGM header or data in '" + name_ + "'");
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000) throw FormatError("PGM value out of range in '" + name_ + "'");
      ++pos_;
    }
    return v;
  }

  // The header ends with exactly one whitespace byte before binary data.
  void skip_single_whitespace() {
    if (pos_ < bytes_.size() && std::isspace(bytes_[pos_])) ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

inline GrayImage decode_pgm(const std::vector<unsigned char>& bytes, const std::string& name) {
  const bool ascii = bytes[1] == '2';
  PnmReader r(bytes, name);
  r.seek(2);
  const long w = r.next_int();
  const long h = r.next_int();
  const long maxval = r.next_int();
  if (w <= 0 || h <= 0 || w > 1'000'000 || h > 1'000'000)
    throw FormatError("PGM '" + name + "' has invalid dimensions");
  if (maxval <= 0 || maxval > 255)
    throw FormatError("PGM '" + name + "' has maxval " + std::to_string(maxval) +
                      "; only 8-bit PGM is supported");
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  std::vector<double> values(n);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = r.next_int();
      if (v > maxval) throw FormatError("PGM '" + name + "' has a sample above maxval");
      values[i] = static_cast<double>(v) * scale;
    }
  } else {
    r.skip_single_whitespace();
    if (bytes.size() - r.pos() < n) throw FormatError("PGM '" + name + "' is truncated");
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = bytes[r.pos() + i];
      if (v > static_cast<unsigned>(maxval))
        throw FormatError("PGM '" + name + "' has a sample above maxval");
      values[i] = static_cast<double>(v) * scale;
    }
  }
  return GrayImage(static_cast<int>(w), static_cast<int>(h), std::move(values));
}

inline GrayImage decode_png(const std::vector<unsigned char>& bytes, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw FormatError("PNG '" + name + "': " + image.message);
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw FormatError("PNG '" + name + "': " + msg);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (color) {
      const unsigned sum = buffer[3 * i] + buffer[3 * i + 1] + buffer[3 * i + 2];
      values[i] = static_cast<double>(sum) / (3.0 * 255.0);
    } else {
      values[i] = static_cast<double>(buffer[i]) / 255.0;
    }
  }
  return GrayImage(w, h, std::move(values));
}

inline std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace detail

/// Reads an 8-bit grayscale PGM (P2 or P5) or a PNG. Color PNGs are reduced
/// to the average of their channels.
inline GrayImage load_gray(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = detail::read_file_bytes(path);
  const std::string format = detail::sniff_format(bytes);
  if (format == "P2" || format == "P5") return detail::decode_pgm(bytes, path.string());
  if (format == "PNG") return detail::decode_png(bytes, path.string());
  throw FormatError("unsupported image format '" + format + "' in '" + path.string() + "'");
}

/// Encodes a gray image as binary PGM (P5), value * 255 rounded.
inline std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.reserve(out.size() + img.size());
  for (double v : img.values()) out.push_back(static_cast<char>(detail::to_byte(v)));
  return out;
}

inline void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  const std::string bytes = encode_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

inline GrayImage to_gray(const BinaryMap& map) {
  GrayImage out(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) out.values()[i] = map.values()[i] ? 1.0 : 0.0;
  return out;
}

/// 8-bit grayscale PNG writer, used for fixtures and external tooling.
inline void write_png(const std::filesystem::path& path, const GrayImage& img) {
  std::vector<png_byte> buffer(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) buffer[i] = detail::to_byte(img.values()[i]);
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0, nullptr))
    throw IoError("cannot write PNG '" + path.string() + "': " + image.message);
}

}  // namespace airline
