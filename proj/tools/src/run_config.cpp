#include "dmap/cli/run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dmap::cli {
namespace {

using nlohmann::json;

json to_json(const RunConfig& c) {
  const GeneratorSettings& g = c.generator;
  json j;
  j["command"] = c.command;
  j["input"] = c.input;
  j["out"] = c.out;
  j["seed"] = c.seed;
  j["generator"] = {
      {"kind", g.kind},
      {"n", g.n},
      {"noise_sigma", g.noise_sigma},
      {"warp", g.warp},
      {"windings", g.windings},
      {"major_radius", g.major_radius},
      {"minor_radius", g.minor_radius},
      {"face_grid", g.face_grid},
      {"face_height", g.face_height},
      {"face_width", g.face_width},
  };
  j["kernel"] = {
      {"t", c.kernel.t},
      {"has_t", c.has_t},
      {"alpha", c.kernel.alpha},
      {"trunc_c", c.kernel.trunc_c},
      {"dense", c.kernel.dense},
  };
  j["grid"] = {{"t_min", c.t_min}, {"t_max", c.t_max}, {"ratio", c.ratio}};
  j["policy"] = {
      {"rule", to_string(c.policy.rule)},
      {"min_mean_neighbors", c.policy.min_mean_neighbors},
      {"require_connected", c.policy.require_connected},
  };
  j["dim"] = c.dim;
  j["method"] = c.method;
  j["amplitude"] = c.amplitude;
  j["threads"] = c.threads;
  return j;
}

RunConfig from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.input = j.at("input").get<std::string>();
  c.out = j.at("out").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();

  const json& g = j.at("generator");
  c.generator.kind = g.at("kind").get<std::string>();
  c.generator.n = g.at("n").get<Index>();
  c.generator.noise_sigma = g.at("noise_sigma").get<double>();
  c.generator.warp = g.at("warp").get<double>();
  c.generator.windings = g.at("windings").get<int>();
  c.generator.major_radius = g.at("major_radius").get<double>();
  c.generator.minor_radius = g.at("minor_radius").get<double>();
  c.generator.face_grid = g.at("face_grid").get<int>();
  c.generator.face_height = g.at("face_height").get<int>();
  c.generator.face_width = g.at("face_width").get<int>();

  const json& k = j.at("kernel");
  c.kernel.t = k.at("t").get<double>();
  c.has_t = k.at("has_t").get<bool>();
  c.kernel.alpha = k.at("alpha").get<double>();
  c.kernel.trunc_c = k.at("trunc_c").get<double>();
  c.kernel.dense = k.at("dense").get<bool>();

  const json& grid = j.at("grid");
  c.t_min = grid.at("t_min").get<double>();
  c.t_max = grid.at("t_max").get<double>();
  c.ratio = grid.at("ratio").get<double>();

  const json& p = j.at("policy");
  c.policy.rule = parse_selection_rule(p.at("rule").get<std::string>());
  c.policy.min_mean_neighbors = p.at("min_mean_neighbors").get<double>();
  c.policy.require_connected = p.at("require_connected").get<bool>();

  c.dim = j.at("dim").get<Index>();
  c.method = j.at("method").get<std::string>();
  c.amplitude = j.at("amplitude").get<int>();
  c.threads = j.at("threads").get<unsigned>();
  return c;
}

}  // namespace

std::string to_json_string(const RunConfig& config) {
  return to_json(config).dump(2) + "\n";
}

RunConfig from_json_string(const std::string& text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed run config: ") + e.what());
  }
}

void save_run_config(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream out(path, std::ios::binary);
  out << to_json_string(config);
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

}  // namespace dmap::cli
