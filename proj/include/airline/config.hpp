#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "airline/error.hpp"
#include "airline/metrics.hpp"
#include "airline/pipeline.hpp"

namespace airline {

struct BenchConfig {
  int warmup = 10;
  int iterations = 50;
};

/// Settings for one CLI invocation. Defaults are the published constants:
/// T = 0.98, m = 15, N = 6.
struct RunConfig {
  PipelineConfig pipeline;
  std::vector<int> radii = default_radii();
  BenchConfig bench;

  void validate() const {
    pipeline.validate();
    for (int r : radii)
      if (r < 0) throw ConfigError("eval.radii must be nonnegative integers");
    if (radii.empty()) throw ConfigError("eval.radii must not be empty");
    if (bench.warmup < 0) throw ConfigError("bench.warmup must be >= 0");
    if (bench.iterations < 1) throw ConfigError("bench.iters must be >= 1");
  }
};

/// Ordered key=value settings; later layers override earlier ones.
using ConfigEntries = std::map<std::string, std::string>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

}  // namespace detail

inline std::vector<int> parse_radii(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t(detail::trim(item));
    if (t.empty()) continue;
    out.push_back(detail::parse_int("eval.radii", t));
  }
  return out;
}

/// Parses flat `key = value` text. Blank lines and lines starting with '#'
/// are ignored.
inline ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key(detail::trim(t.substr(0, eq)));
    const std::string value(detail::trim(t.substr(eq + 1)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

inline ConfigEntries read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

/// Applies settings on top of `cfg`. Unknown keys are an error.
inline void apply_config(RunConfig& cfg, const ConfigEntries& entries) {
  for (const auto& [key, value] : entries) {
    PipelineConfig& p = cfg.pipeline;
    if (key == "edge.kind") p.edge.kind = parse_edge_source_kind(value);
    else if (key == "edge.sigma") p.edge.gradient_smoothing = detail::parse_double(key, value);
    else if (key == "edge.threshold") p.edge.edge_threshold = detail::parse_double(key, value);
    else if (key == "edge.dilate") p.edge.edge_dilation = detail::parse_int(key, value);
    else if (key == "edge.file") p.edge.file_path = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
    else if (key == "orient.channels") p.orient.channels = detail::parse_int(key, value);
    else if (key == "orient.kernel_size") p.orient.kernel_size = detail::parse_int(key, value);
    else if (key == "crg.threshold") p.crg.similarity_threshold = detail::parse_double(key, value);
    else if (key == "crg.min_pixels") p.crg.min_region_size = detail::parse_int(key, value);
    else if (key == "eval.radii") cfg.radii = parse_radii(value);
    else if (key == "bench.warmup") cfg.bench.warmup = detail::parse_int(key, value);
    else if (key == "bench.iters") cfg.bench.iterations = detail::parse_int(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

/// Built-in defaults, then the config file, then command-line flags.
inline RunConfig resolve_config(const ConfigEntries& file_entries, const ConfigEntries& flag_entries) {
  RunConfig cfg;
  apply_config(cfg, file_entries);
  apply_config(cfg, flag_entries);
  cfg.validate();
  return cfg;
}

}  // namespace airline
