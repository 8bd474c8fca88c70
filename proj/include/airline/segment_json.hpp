#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

#include "airline/error.hpp"
#include "airline/geometry.hpp"

namespace airline {

/// Segment list for one image, as stored on disk:
/// {"image": str, "width": int, "height": int, "lines": [{"x1","y1","x2","y2"}]}
struct SegmentFile {
  std::string image;
  int width = 0;
  int height = 0;
  std::vector<LineSegment> lines;
};

inline nlohmann::ordered_json to_json(const SegmentFile& f) {
  nlohmann::ordered_json j;
  j["image"] = f.image;
  j["width"] = f.width;
  j["height"] = f.height;
  j["lines"] = nlohmann::ordered_json::array();
  for (const LineSegment& s : f.lines)
    j["lines"].push_back({{"x1", s.p1.x}, {"y1", s.p1.y}, {"x2", s.p2.x}, {"y2", s.p2.y}});
  return j;
}

inline std::string dump_segment_file(const SegmentFile& f) { return to_json(f).dump(2) + "\n"; }

inline SegmentFile parse_segment_file(const std::string& text, const std::string& name = "<memory>") {
  SegmentFile f;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    f.image = j.value("image", std::string{});
    f.width = j.at("width").get<int>();
    f.height = j.at("height").get<int>();
    for (const auto& l : j.at("lines")) {
      const Point2 a{l.at("x1").get<double>(), l.at("y1").get<double>()};
      const Point2 b{l.at("x2").get<double>(), l.at("y2").get<double>()};
      f.lines.push_back(make_segment(a, b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("segment file '" + name + "': " + e.what());
  }
  if (f.width < 0 || f.height < 0) throw FormatError("segment file '" + name + "' has negative dimensions");
  return f;
}

inline SegmentFile read_segment_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_segment_file(text, path.string());
}

inline void write_segment_file(const std::filesystem::path& path, const SegmentFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << dump_segment_file(f);
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace airline
