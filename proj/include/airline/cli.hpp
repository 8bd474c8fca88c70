#pragma once

// Command-line front end: detect, eval, bench and synth subcommands. Kept in
// the library so tests can drive the exact argument handling the binary uses.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "airline/bench.hpp"
#include "airline/config.hpp"
#include "airline/error.hpp"
#include "airline/image_io.hpp"
#include "airline/log.hpp"
#include "airline/metrics.hpp"
#include "airline/pipeline.hpp"
#include "airline/segment_json.hpp"
#include "airline/synth.hpp"

namespace airline::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Flags every subcommand accepts.
struct CommonOptions {
  std::string config_path;
  ConfigEntries flags;  // flag overrides as config keys
  std::string output;
  bool debug_maps = false;
  int jobs = 1;
};

struct SynthOptions {
  int count = 15;
  std::uint64_t seed = 0;
  std::string size = "512x512";
  double min_len = 30.0;
  double separation = 10.0;
  double max_len = 0.0;
  int scenes = 1;
};

namespace detail {

inline void add_common(CLI::App* sub, CommonOptions& o) {
  auto key = [&o](const char* k) { return [&o, k](const std::string& v) { o.flags[k] = v; }; };
  sub->add_option("--config", o.config_path, "flat key=value config file");
  sub->add_option_function<std::string>("--edge-source", key("edge.kind"), "gradient|file");
  sub->add_option_function<std::string>("--edge-threshold", key("edge.threshold"), "edge probability threshold");
  sub->add_option_function<std::string>("--edge-sigma", key("edge.sigma"), "Gaussian sigma for the gradient source");
  sub->add_option_function<std::string>("--edge-dilate", key("edge.dilate"), "disk radius applied to thresholded edges");
  sub->add_option_function<std::string>("--edge-map", key("edge.file"), "edge-map file or directory (file source)");
  sub->add_option_function<std::string>("--orient-channels", key("orient.channels"), "number of orientations N");
  sub->add_option_function<std::string>("--kernel-size", key("orient.kernel_size"), "odd kernel size K");
  sub->add_option_function<std::string>("--crg-threshold", key("crg.threshold"), "similarity threshold T");
  sub->add_option_function<std::string>("--min-pixels", key("crg.min_pixels"), "minimum region size m");
  sub->add_option("--output", o.output, "output path");
  sub->add_flag("--debug-maps", o.debug_maps, "write edge and region-label PGMs");
  sub->add_option("--jobs", o.jobs, "images processed concurrently")->check(CLI::PositiveNumber);
}

inline void add_synth_options(CLI::App* sub, SynthOptions& s) {
  sub->add_option("--count", s.count, "segments per scene");
  sub->add_option("--seed", s.seed, "random seed");
  sub->add_option("--size", s.size, "raster size WxH");
  sub->add_option("--min-len", s.min_len, "minimum segment length in pixels");
  sub->add_option("--separation", s.separation, "minimum distance between segments in pixels");
  sub->add_option("--max-len", s.max_len, "maximum segment length (0: a third of the smaller side)");
}

inline RunConfig load_run_config(const CommonOptions& o) {
  const ConfigEntries file = o.config_path.empty() ? ConfigEntries{} : read_config_file(o.config_path);
  return resolve_config(file, o.flags);
}

inline std::pair<int, int> parse_size(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("--size must look like WxH, got '" + s + "'");
  int w = 0, h = 0;
  try {
    w = std::stoi(s.substr(0, x));
    h = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    throw ConfigError("--size must look like WxH, got '" + s + "'");
  }
  if (w < 2 || h < 2) throw ConfigError("--size must be at least 2x2");
  return {w, h};
}

inline SynthParams synth_params(const SynthOptions& s, std::uint64_t seed) {
  SynthParams p;
  std::tie(p.width, p.height) = parse_size(s.size);
  if (s.count < 1) throw ConfigError("--count must be >= 1");
  if (s.min_len <= 0.0) throw ConfigError("--min-len must be > 0");
  if (s.separation < 0.0) throw ConfigError("--separation must be >= 0");
  p.count = s.count;
  p.seed = seed;
  p.min_len = s.min_len;
  p.separation = s.separation;
  p.max_len = s.max_len;
  return p;
}

inline bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".png";
}

inline std::vector<fs::path> list_files(const fs::path& dir, bool (*keep)(const fs::path&)) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && keep(e.path())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_json_file(const fs::path& p) { return p.extension() == ".json"; }

// Edge map location for one frame under the file edge source.
inline fs::path edge_map_path(const PipelineConfig& cfg, const fs::path& image) {
  if (!cfg.edge.file_path) return image;
  const fs::path& where = *cfg.edge.file_path;
  if (!fs::is_directory(where)) return where;
  for (const char* ext : {".pgm", ".png", ".PGM", ".PNG"}) {
    fs::path candidate = where / image.stem();
    candidate += ext;
    if (fs::exists(candidate)) return candidate;
  }
  throw IoError("no edge map for '" + image.filename().string() + "' in '" + where.string() + "'");
}

inline Detection detect_one(const LineDetector& detector, const fs::path& image_path) {
  const GrayImage image = load_gray(image_path);
  const PipelineConfig& cfg = detector.config();
  if (cfg.edge.kind == EdgeSourceKind::file) {
    const fs::path edges = edge_map_path(cfg, image_path);
    GrayImage edge_map = edges == image_path ? image : load_edge_map(edges, image.width(), image.height());
    return detector.run_on_edge_map(std::move(edge_map));
  }
  return detector.run(image);
}

inline GrayImage label_image(const Raster<int>& labels, std::size_t regions) {
  GrayImage out(labels.width(), labels.height(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels.values()[i];
    if (l == 0) continue;
    // Spread gray levels over [0.25, 1] so neighbouring labels stay distinct.
    const double step = static_cast<double>((l * 37) % 64) / 63.0;
    out.values()[i] = regions == 0 ? 0.0 : 0.25 + 0.75 * step;
  }
  return out;
}

inline SegmentFile segment_file(const fs::path& image_path, const Detection& d) {
  SegmentFile f;
  f.image = image_path.filename().string();
  f.width = d.edge_map.width();
  f.height = d.edge_map.height();
  f.lines = d.segments;
  return f;
}

inline void write_debug_maps(const fs::path& dir, const fs::path& image_path, const Detection& d) {
  const std::string stem = image_path.stem().string();
  write_pgm(dir / (stem + ".edges.pgm"), d.edge_map);
  write_pgm(dir / (stem + ".binary.pgm"), to_gray(d.edges));
  write_pgm(dir / (stem + ".regions.pgm"),
            label_image(region_labels(d.edges.width(), d.edges.height(), d.regions), d.regions.size()));
}

inline SegmentSet load_segment_set(const fs::path& path, const std::optional<std::string>& single_id) {
  SegmentSet set;
  auto add = [&set](const std::string& id, const fs::path& file) {
    SegmentFile f = read_segment_file(file);
    set[id] = ImageSegments{f.width, f.height, std::move(f.lines)};
  };
  if (fs::is_directory(path)) {
    for (const fs::path& f : list_files(path, is_json_file)) add(f.stem().string(), f);
  } else if (fs::exists(path)) {
    add(single_id.value_or(path.stem().string()), path);
  } else {
    throw IoError("no such file or directory: '" + path.string() + "'");
  }
  return set;
}

inline std::string scene_stem(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%04llu", static_cast<unsigned long long>(seed));
  return buf;
}

inline std::string ms(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds * 1e3);
  return buf;
}

}  // namespace detail

inline int cmd_detect(const CommonOptions& o, const std::string& input, std::ostream& out) {
  const RunConfig cfg = detail::load_run_config(o);
  const fs::path in(input);
  if (!fs::exists(in)) throw IoError("input not found: '" + input + "'");
  const LineDetector detector(cfg.pipeline);

  if (!fs::is_directory(in)) {
    const Detection d = detail::detect_one(detector, in);
    const SegmentFile f = detail::segment_file(in, d);
    fs::path debug_dir = ".";
    if (o.output.empty() || o.output == "-") {
      out << dump_segment_file(f);
    } else {
      fs::path target(o.output);
      if (fs::is_directory(target) || o.output.back() == '/') {
        fs::create_directories(target);
        debug_dir = target;
        target /= in.stem().string() + ".json";
      } else if (target.has_parent_path()) {
        debug_dir = target.parent_path();
      }
      write_segment_file(target, f);
    }
    if (o.debug_maps) detail::write_debug_maps(debug_dir, in, d);
    log::info(in.string() + ": " + std::to_string(d.segments.size()) + " segments");
    return kOk;
  }

  if (o.output.empty() || o.output == "-") throw ConfigError("detect on a directory needs --output DIR");
  const fs::path out_dir(o.output);
  fs::create_directories(out_dir);
  const std::vector<fs::path> images = detail::list_files(in, detail::is_image_file);
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < images.size(); i = next++) {
      const fs::path& img = images[i];
      try {
        const Detection d = detail::detect_one(detector, img);
        write_segment_file(out_dir / (img.stem().string() + ".json"), detail::segment_file(img, d));
        if (o.debug_maps) detail::write_debug_maps(out_dir, img, d);
        log::info(img.string() + ": " + std::to_string(d.segments.size()) + " segments");
      } catch (const std::exception& e) {
        ++failures;
        log::error("skipping '" + img.string() + "': " + e.what());
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(images.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return failures > 0 ? kRuntime : kOk;
}

inline int cmd_eval(const CommonOptions& o, const std::string& predictions, const std::string& gt, std::ostream& out) {
  const RunConfig cfg = detail::load_run_config(o);
  const fs::path gt_path(gt);
  const fs::path pred_path(predictions);
  // Two plain files describe one image, named after the ground truth.
  std::optional<std::string> single_id;
  if (!fs::is_directory(gt_path) && !fs::is_directory(pred_path)) single_id = gt_path.stem().string();
  const SegmentSet gts = detail::load_segment_set(gt_path, single_id);
  const SegmentSet preds = detail::load_segment_set(pred_path, single_id);
  const EvalReport report = evaluate_set(preds, gts, cfg.radii);
  for (const std::string& id : report.skipped) log::warn("skipped '" + id + "': ground truth covers no pixel");
  const std::string csv = report_csv(report);
  if (o.output.empty() || o.output == "-") {
    out << csv;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw IoError("cannot write '" + o.output + "'");
    f << csv;
    out << csv_header(report.radii) << "\n" << aggregate_row(report) << "\n";
  }
  return kOk;
}

inline int cmd_bench(const CommonOptions& o, const SynthOptions& s, const std::string& input, std::ostream& out) {
  const RunConfig cfg = detail::load_run_config(o);
  const LineDetector detector(cfg.pipeline);
  std::vector<BenchFrame> frames;
  if (input.empty()) {
    const SynthScene scene = generate_scene(detail::synth_params(s, s.seed));
    frames.push_back({detail::scene_stem(s.seed), scene.edge_map, true});
  } else {
    const fs::path in(input);
    if (!fs::exists(in)) throw IoError("input not found: '" + input + "'");
    std::vector<fs::path> paths = fs::is_directory(in) ? detail::list_files(in, detail::is_image_file)
                                                       : std::vector<fs::path>{in};
    for (const fs::path& p : paths) {
      const GrayImage image = load_gray(p);
      if (cfg.pipeline.edge.kind == EdgeSourceKind::file) {
        const fs::path e = detail::edge_map_path(cfg.pipeline, p);
        frames.push_back({p.filename().string(), e == p ? image : load_edge_map(e, image.width(), image.height()), true});
      } else {
        frames.push_back({p.filename().string(), image, false});
      }
    }
  }
  const BenchReport r = run_bench(detector, frames, cfg.bench.warmup, cfg.bench.iterations);

  out << "frames " << r.frames << ", warmup " << cfg.bench.warmup << ", timed iterations " << r.iterations
      << (frames.front().precomputed_edges ? " (precomputed edge maps)" : "") << "\n";
  out << "stage            mean_ms   std_ms\n";
  auto row = [&out](const char* name, const Summary& v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-16s %8.3f %8.3f\n", name, v.mean * 1e3, v.stddev * 1e3);
    out << buf;
  };
  row("edge", r.edge);
  row("orientation", r.orientation);
  row("region_grow", r.region_grow);
  row("parameterize", r.parameterization);
  row("end_to_end", r.end_to_end);
  char buf[96];
  std::snprintf(buf, sizeof buf, "fps mean %.2f std %.2f\n", r.fps.mean, r.fps.stddev);
  out << buf;
  out << "segments " << r.segments << "\n";

  if (!o.output.empty() && o.output != "-") {
    nlohmann::ordered_json j;
    auto put = [&j](const char* k, const Summary& v) { j[k] = {{"mean_ms", v.mean * 1e3}, {"std_ms", v.stddev * 1e3}}; };
    j["frames"] = r.frames;
    j["warmup"] = cfg.bench.warmup;
    j["iterations"] = r.iterations;
    put("edge", r.edge);
    put("orientation", r.orientation);
    put("region_grow", r.region_grow);
    put("parameterization", r.parameterization);
    put("end_to_end", r.end_to_end);
    j["fps"] = {{"mean", r.fps.mean}, {"std", r.fps.stddev}};
    j["segments"] = r.segments;
    std::ofstream f(o.output);
    if (!f) throw IoError("cannot write '" + o.output + "'");
    f << j.dump(2) << "\n";
  }
  return kOk;
}

inline int cmd_synth(const CommonOptions& o, const SynthOptions& s, std::ostream& out) {
  if (s.scenes < 1) throw ConfigError("--scenes must be >= 1");
  const fs::path dir(o.output.empty() ? "." : o.output);
  fs::create_directories(dir);
  for (int i = 0; i < s.scenes; ++i) {
    const std::uint64_t seed = s.seed + static_cast<std::uint64_t>(i);
    const SynthScene scene = generate_scene(detail::synth_params(s, seed));
    const std::string stem = detail::scene_stem(seed);
    SegmentFile f;
    f.image = stem + ".pgm";
    f.width = scene.width;
    f.height = scene.height;
    f.lines = scene.segments;
    write_segment_file(dir / (stem + ".json"), f);
    write_pgm(dir / (stem + ".pgm"), scene.edge_map);
    out << (dir / (stem + ".json")).string() << "\n";
  }
  return kOk;
}

/// Parses argv and runs one subcommand. Returns the process exit status:
/// 0 success, 1 usage or configuration error, 2 runtime failure.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Edge-based line segment detection with local edge voting"};
  app.require_subcommand(1);

  CommonOptions detect_opts, eval_opts, bench_opts, synth_opts;
  SynthOptions bench_synth, synth;
  std::string detect_input, eval_input, eval_gt, eval_radii, bench_input;
  std::string bench_warmup, bench_iters;

  CLI::App* detect = app.add_subcommand("detect", "detect line segments in an image or a directory of images");
  detail::add_common(detect, detect_opts);
  detect->add_option("input", detect_input, "image file or directory")->required();

  CLI::App* eval = app.add_subcommand("eval", "score predictions against ground truth with LP_r");
  detail::add_common(eval, eval_opts);
  eval->add_option("predictions", eval_input, "prediction JSON file or directory")->required();
  eval->add_option("--gt", eval_gt, "ground-truth JSON file or directory")->required();
  eval->add_option_function<std::string>("--radii", [&](const std::string& v) { eval_opts.flags["eval.radii"] = v; },
                                         "comma-separated dilation radii");

  CLI::App* bench = app.add_subcommand("bench", "time the pipeline per stage");
  detail::add_common(bench, bench_opts);
  detail::add_synth_options(bench, bench_synth);
  bench->add_option("input", bench_input, "image file or directory (default: a synthetic scene)");
  bench->add_option_function<std::string>("--warmup", [&](const std::string& v) { bench_opts.flags["bench.warmup"] = v; },
                                          "untimed iterations");
  bench->add_option_function<std::string>("--iters", [&](const std::string& v) { bench_opts.flags["bench.iters"] = v; },
                                          "timed iterations");

  CLI::App* synth_cmd = app.add_subcommand("synth", "generate synthetic scenes with ground truth");
  detail::add_common(synth_cmd, synth_opts);
  detail::add_synth_options(synth_cmd, synth);
  synth_cmd->add_option("--scenes", synth.scenes, "number of scenes; seeds run from --seed upward");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*detect) return cmd_detect(detect_opts, detect_input, out);
    if (*eval) return cmd_eval(eval_opts, eval_input, eval_gt, out);
    if (*bench) return cmd_bench(bench_opts, bench_synth, bench_input, out);
    if (*synth_cmd) return cmd_synth(synth_opts, synth, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}

}  // namespace airline::cli
