#include "dmap/cli/app.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "dmap/baselines.hpp"
#include "dmap/cli/run_config.hpp"
#include "dmap/cli/svg.hpp"
#include "dmap/csv.hpp"
#include "dmap/datasets.hpp"
#include "dmap/image.hpp"
#include "dmap/sge.hpp"
#include "dmap/spectral.hpp"

namespace dmap::cli {
namespace {

namespace fs = std::filesystem;

struct DegenerateResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

std::optional<Vector> color_source(const PointCloud& cloud) {
  if (!cloud.ground_truth()) return std::nullopt;
  return Vector(cloud.ground_truth()->col(0));
}

void write_embedding(const fs::path& dir, const Embedding& e, const PointCloud& cloud,
                     const std::string& title, Streams io) {
  for (const std::string& w : e.warnings) io.err << "warning: " << w << '\n';
  write_matrix_csv(dir / "embedding.csv", e.coords, e.header);
  write_text(dir / "embedding.svg", scatter_svg(e.coords, color_source(cloud), title));
}

// --- generate ------------------------------------------------------------

int execute_generate(const RunConfig& c, Streams io) {
  const GeneratorSettings& g = c.generator;
  const fs::path out = c.out;
  if (out.has_parent_path()) make_dir(out.parent_path());

  PointCloud cloud = [&] {
    if (g.kind == "swiss-roll") return gen_swiss_roll(g.n, g.noise_sigma, c.seed);
    if (g.kind == "torus-helix") {
      return gen_torus_helix(g.n, g.major_radius, g.minor_radius, g.windings,
                             g.noise_sigma, c.seed);
    }
    if (g.kind == "circle") return gen_circle(g.n, g.warp, g.noise_sigma, c.seed);
    if (g.kind == "synthetic-faces") {
      const SyntheticFaces faces = gen_synthetic_faces(g.face_grid, g.face_height, g.face_width);
      const fs::path img_dir = out.parent_path() / (out.stem().string() + "_pgm");
      make_dir(img_dir);
      for (std::size_t i = 0; i < faces.images.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "face_%04zu.pgm", i);
        write_pgm(img_dir / name, faces.images.images()[i]);
      }
      return PointCloud(images_to_points(faces.images).points(), faces.lattice,
                        "synthetic-faces");
    }
    throw std::invalid_argument("unknown dataset kind: " + g.kind);
  }();

  write_point_cloud(out, cloud);
  save_run_config(out.parent_path() / (out.stem().string() + ".run_config.json"), c);
  io.out << "wrote " << cloud.size() << " x " << cloud.ambient_dim() << " points to "
         << out.string() << '\n';
  return kOk;
}

// --- sweep ---------------------------------------------------------------

int execute_sweep(RunConfig c, Streams io) {
  const PointCloud cloud = read_point_cloud(c.input);
  c.kernel.validate();
  TimeGrid grid;
  if (c.t_min > 0 && c.t_max > 0) {
    grid = make_grid(c.t_min, c.t_max, c.ratio);
  } else {
    const TimeGrid heuristic = default_grid(pairwise_sq_dists(cloud), c.kernel.trunc_c, c.ratio);
    grid = make_grid(c.t_min > 0 ? c.t_min : heuristic.times.front(),
                     c.t_max > 0 ? c.t_max : heuristic.times.back(), c.ratio);
  }
  c.t_min = grid.times.front();
  c.t_max = grid.times.back();

  const fs::path dir = c.out;
  make_dir(dir);
  save_run_config(dir / "run_config.json", c);

  SweepOptions opts;
  opts.threads = c.threads;
  opts.on_point = [&](const SGEPoint& p) {
    io.err << "t=" << format_real(p.t) << " sge=" << format_real(p.sge)
           << " mean_neighbors=" << format_real(p.mean_neighbors)
           << " components=" << p.components << '\n';
  };
  const SGECurve curve = sweep(cloud, c.kernel, grid, c.policy, opts);
  write_sge_curve_csv(dir / "sge_curve.csv", curve);
  write_text(dir / "sge_curve.svg",
             sge_curve_svg(curve, "SGE(t), alpha=" + format_real(c.kernel.alpha)));

  if (!curve.selected_index) {
    throw DegenerateResult(
        "no grid point is a candidate (every t leaves the neighbor graph "
        "disconnected or sparser than --min-neighbors); widen the grid or "
        "relax the policy");
  }
  const double t = curve.points[*curve.selected_index].t;
  write_text(dir / "selected.txt", format_real(t) + "\n");
  const Embedding e = embed_cloud(cloud, c.kernel.with_t(t), c.dim);
  write_embedding(dir, e, cloud, "diffusion map, t=" + format_real(t), io);
  io.out << "selected t=" << format_real(t) << " (grid index " << *curve.selected_index
         << " of " << curve.points.size() << ")\n";
  return kOk;
}

// --- embed ---------------------------------------------------------------

int execute_embed(const RunConfig& c, Streams io) {
  if (!c.has_t) throw std::invalid_argument("embed needs --t");
  const PointCloud cloud = read_point_cloud(c.input);
  const Embedding e = embed_cloud(cloud, c.kernel, c.dim);
  const fs::path dir = c.out;
  make_dir(dir);
  save_run_config(dir / "run_config.json", c);
  write_embedding(dir, e, cloud, "diffusion map, t=" + format_real(c.kernel.t), io);
  io.out << "wrote " << e.coords.rows() << " x " << e.coords.cols() << " embedding to "
         << (dir / "embedding.csv").string() << '\n';
  return kOk;
}

// --- baseline ------------------------------------------------------------

int execute_baseline(const RunConfig& c, Streams io) {
  const PointCloud cloud = read_point_cloud(c.input);
  Embedding e;
  if (c.method == "pca") {
    e = pca_embed(cloud, c.dim);
  } else if (c.method == "mds") {
    e = mds_embed(pairwise_sq_dists(cloud), c.dim);
  } else if (c.method == "laplacian") {
    if (!c.has_t) throw std::invalid_argument("laplacian baseline needs --t");
    c.kernel.validate();
    const AffinityMatrix w =
        alpha_renormalize(affinity(pairwise_sq_dists(cloud), c.kernel), c.kernel.alpha);
    e = laplacian_eigenmap_embed(w, c.dim);
  } else {
    throw std::invalid_argument("unknown baseline method: " + c.method);
  }
  const fs::path dir = c.out;
  make_dir(dir);
  save_run_config(dir / "run_config.json", c);
  write_embedding(dir, e, cloud, c.method, io);
  io.out << "wrote " << c.method << " embedding to " << (dir / "embedding.csv").string()
         << '\n';
  return kOk;
}

// --- noise-images ----------------------------------------------------------

int execute_noise_images(const RunConfig& c, Streams io) {
  if (c.amplitude < 0) throw std::invalid_argument("--amplitude must be >= 0");
  if (!fs::is_directory(c.input)) {
    throw std::invalid_argument("not a directory: " + c.input);
  }
  std::vector<fs::path> names;
  std::vector<std::string> skipped;
  const ImageStack stack = read_pgm_dir(c.input, &names, &skipped);
  for (const std::string& s : skipped) io.err << "warning: skipped " << s << '\n';
  if (stack.empty()) throw std::invalid_argument("no PGM images in " + c.input);

  const ImageStack noisy = add_pixel_noise(stack, c.amplitude, c.seed);
  const fs::path dir = c.out;
  if (fs::exists(dir) && fs::equivalent(dir, c.input)) {
    throw std::invalid_argument("--out must differ from the input directory");
  }
  make_dir(dir);
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    write_pgm(dir / names[i].filename(), noisy.images()[i]);
  }
  save_run_config(dir / "run_config.json", c);
  io.out << "wrote " << noisy.size() << " images to " << dir.string() << '\n';
  return kOk;
}

int execute(const RunConfig& c, Streams io) {
  if (c.command == "generate") return execute_generate(c, io);
  if (c.command == "sweep") return execute_sweep(c, io);
  if (c.command == "embed") return execute_embed(c, io);
  if (c.command == "baseline") return execute_baseline(c, io);
  if (c.command == "noise-images") return execute_noise_images(c, io);
  throw std::invalid_argument("unknown command in run config: " + c.command);
}

// --- flag wiring -----------------------------------------------------------

void add_kernel_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--alpha", c.kernel.alpha, "density-correction exponent")
      ->capture_default_str();
  app->add_option("--trunc-c", c.kernel.trunc_c,
                  "truncation constant: W_ij = 0 when d^2 >= C t")
      ->capture_default_str();
  app->add_flag("--dense", c.kernel.dense, "keep every Gaussian weight");
}

void add_grid_and_policy_flags(CLI::App* app, RunConfig& c, std::string& rule) {
  app->add_option("--t-min", c.t_min, "smallest grid time (default: from the data)");
  app->add_option("--t-max", c.t_max, "largest grid time (default: from the data)");
  app->add_option("--ratio", c.ratio, "grid ratio")->capture_default_str();
  app->add_option("--min-neighbors", c.policy.min_mean_neighbors,
                  "minimum mean neighbor count for a candidate t")
      ->capture_default_str();
  app->add_option("--rule", rule, "selection rule")
      ->check(CLI::IsMember({"first-local-min", "global-min"}))
      ->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"Diffusion maps with automatic selection of the diffusion time"};
  app.require_subcommand(1);

  RunConfig c;
  std::string rule = to_string(c.policy.rule);
  double t = 0;
  std::string replay_path;
  std::string replay_out;

  auto* gen = app.add_subcommand("generate", "write a synthetic dataset as CSV");
  gen->add_option("kind", c.generator.kind, "dataset")
      ->required()
      ->check(CLI::IsMember({"swiss-roll", "torus-helix", "circle", "synthetic-faces"}));
  gen->add_option("--n", c.generator.n, "number of points")->capture_default_str();
  gen->add_option("--seed", c.seed, "random seed")->capture_default_str();
  gen->add_option("--noise-sigma", c.generator.noise_sigma, "Gaussian noise stddev")
      ->capture_default_str();
  gen->add_option("--warp", c.generator.warp, "circle sampling warp in [0, 1)")
      ->capture_default_str();
  gen->add_option("--windings", c.generator.windings, "torus-helix windings")
      ->capture_default_str();
  gen->add_option("--major-radius", c.generator.major_radius, "torus major radius")
      ->capture_default_str();
  gen->add_option("--minor-radius", c.generator.minor_radius, "torus minor radius")
      ->capture_default_str();
  gen->add_option("--grid", c.generator.face_grid, "faces: lattice side")
      ->capture_default_str();
  gen->add_option("--height", c.generator.face_height, "faces: image height")
      ->capture_default_str();
  gen->add_option("--width", c.generator.face_width, "faces: image width")
      ->capture_default_str();
  gen->add_option("--out", c.out, "output CSV (default: <kind>.csv)");

  auto* sw = app.add_subcommand("sweep", "evaluate SGE over a time grid and embed at the selected t");
  sw->add_option("data", c.input, "point cloud CSV")->required();
  add_kernel_flags(sw, c);
  add_grid_and_policy_flags(sw, c, rule);
  sw->add_option("--dim", c.dim, "embedding dimension")->capture_default_str();
  sw->add_option("--out", c.out, "output directory")->required();

  auto* em = app.add_subcommand("embed", "diffusion-map embedding at a fixed t");
  em->add_option("data", c.input, "point cloud CSV")->required();
  em->add_option("--t", t, "diffusion time")->required();
  add_kernel_flags(em, c);
  em->add_option("--dim", c.dim, "embedding dimension")->capture_default_str();
  em->add_option("--out", c.out, "output directory")->required();

  auto* bl = app.add_subcommand("baseline", "PCA, classical MDS or Laplacian eigenmaps");
  bl->add_option("method", c.method, "method")
      ->required()
      ->check(CLI::IsMember({"pca", "mds", "laplacian"}));
  bl->add_option("data", c.input, "point cloud CSV")->required();
  bl->add_option("--t", t, "kernel time (laplacian only)");
  add_kernel_flags(bl, c);
  bl->add_option("--dim", c.dim, "embedding dimension")->capture_default_str();
  bl->add_option("--out", c.out, "output directory")->required();

  auto* ni = app.add_subcommand("noise-images", "add clamped uniform integer noise to PGM images");
  ni->add_option("input", c.input, "directory of P5 PGM files")->required();
  ni->add_option("--amplitude", c.amplitude, "noise amplitude")->capture_default_str();
  ni->add_option("--seed", c.seed, "random seed")->capture_default_str();
  ni->add_option("--out", c.out, "output directory")->required();

  auto* rp = app.add_subcommand("replay", "re-run a command from its run_config.json");
  rp->add_option("config", replay_path, "run_config.json")->required()->check(CLI::ExistingFile);
  rp->add_option("--out", replay_out, "write outputs here instead");

  std::vector<std::string> argv_store{"dmap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (rp->parsed()) {
      RunConfig loaded = load_run_config(replay_path);
      if (!replay_out.empty()) loaded.out = replay_out;
      return execute(loaded, io);
    }
    c.policy.rule = parse_selection_rule(rule);
    if (em->parsed() || bl->count("--t") > 0) {
      c.kernel.t = t;
      c.has_t = true;
    }
    if (gen->parsed()) {
      c.command = "generate";
      if (c.out.empty()) c.out = c.generator.kind + ".csv";
    } else if (sw->parsed()) {
      c.command = "sweep";
    } else if (em->parsed()) {
      c.command = "embed";
    } else if (bl->parsed()) {
      c.command = "baseline";
    } else {
      c.command = "noise-images";
    }
    return execute(c, io);
  } catch (const DegenerateResult& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace dmap::cli
