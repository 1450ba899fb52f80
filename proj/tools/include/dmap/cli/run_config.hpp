#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dmap/kernel.hpp"
#include "dmap/sge.hpp"

namespace dmap::cli {

struct GeneratorSettings {
  std::string kind;
  Index n = 1000;
  double noise_sigma = 0.0;
  double warp = 0.8;
  int windings = 10;
  double major_radius = 3.0;
  double minor_radius = 1.0;
  int face_grid = 8;
  int face_height = 24;
  int face_width = 32;
};

/// Everything needed to reproduce one invocation. Grid bounds are stored
/// after defaults are resolved, so a replay does not depend on heuristics.
struct RunConfig {
  std::string command;  // generate, sweep, embed, baseline, noise-images
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  GeneratorSettings generator;
  KernelConfig kernel;
  bool has_t = false;  // whether kernel.t was given explicitly
  double t_min = 0.0;  // 0 until resolved
  double t_max = 0.0;
  double ratio = 2.0;
  SelectionPolicy policy;
  Index dim = 2;
  std::string method;
  int amplitude = 100;
  unsigned threads = 0;
};

std::string to_json_string(const RunConfig& config);
RunConfig from_json_string(const std::string& text);

void save_run_config(const std::filesystem::path& path, const RunConfig& config);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace dmap::cli
