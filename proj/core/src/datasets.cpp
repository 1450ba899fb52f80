#include "dmap/datasets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dmap {
namespace {

constexpr double kPi = std::numbers::pi;

void add_gaussian_noise(Matrix& points, double sigma, std::mt19937_64& rng) {
  if (sigma == 0.0) return;
  std::normal_distribution<double> normal(0.0, sigma);
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < points.cols(); ++j) points(i, j) += normal(rng);
  }
}

void check_common(Index n, double noise_sigma) {
  if (n < 4) throw std::invalid_argument("need at least 4 points");
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise sigma must be nonnegative");
  }
}

}  // namespace

PointCloud gen_swiss_roll(Index n, double noise_sigma, std::uint64_t seed) {
  check_common(n, noise_sigma);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u_dist(1.5 * kPi, 4.5 * kPi);
  std::uniform_real_distribution<double> v_dist(0.0, 21.0);

  Matrix points(n, 3);
  Matrix truth(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double u = u_dist(rng);
    const double v = v_dist(rng);
    points.row(i) << u * std::cos(u), v, u * std::sin(u);
    truth.row(i) << u, v;
  }
  add_gaussian_noise(points, noise_sigma, rng);
  return PointCloud(std::move(points), std::move(truth), "swiss-roll");
}

PointCloud gen_torus_helix(Index n, double R, double r, int windings,
                           double noise_sigma, std::uint64_t seed) {
  check_common(n, noise_sigma);
  if (!(r > 0.0)) throw std::invalid_argument("tube radius r must be positive");
  if (!(R > r)) throw std::invalid_argument("torus needs R > r");
  if (windings < 1) throw std::invalid_argument("windings must be >= 1");

  std::mt19937_64 rng(seed);
  Matrix points(n, 3);
  Matrix truth(n, 1);
  const double w = windings;
  for (Index i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double ring = R + r * std::cos(w * theta);
    points.row(i) << ring * std::cos(theta), ring * std::sin(theta),
        r * std::sin(w * theta);
    truth(i, 0) = theta;
  }
  add_gaussian_noise(points, noise_sigma, rng);
  return PointCloud(std::move(points), std::move(truth), "torus-helix");
}

PointCloud gen_circle(Index n, double warp, double noise_sigma,
                      std::uint64_t seed) {
  check_common(n, noise_sigma);
  if (!(warp >= 0.0) || !(warp < 1.0)) {
    throw std::invalid_argument("warp must lie in [0, 1)");
  }

  std::mt19937_64 rng(seed);
  Matrix points(n, 2);
  Matrix truth(n, 1);
  for (Index i = 0; i < n; ++i) {
    const double psi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double phi = psi + warp * std::sin(psi);
    points.row(i) << std::cos(phi), std::sin(phi);
    truth(i, 0) = phi;
  }
  add_gaussian_noise(points, noise_sigma, rng);
  return PointCloud(std::move(points), std::move(truth), "circle");
}

SyntheticFaces gen_synthetic_faces(int grid, int height, int width) {
  if (grid < 3) throw std::invalid_argument("face grid must be >= 3");
  if (height < 1 || width < 1) {
    throw std::invalid_argument("image size must be positive");
  }

  const double sigma = std::min(height, width) / 6.0;
  std::vector<GrayImage> images;
  images.reserve(static_cast<std::size_t>(grid) * grid);
  Matrix lattice(static_cast<Index>(grid) * grid, 2);

  for (int gi = 0; gi < grid; ++gi) {
    for (int gj = 0; gj < grid; ++gj) {
      // Pixel (r, c) sits at integer coordinates; centers tile the frame.
      const double cy = (gi + 0.5) * height / grid - 0.5;
      const double cx = (gj + 0.5) * width / grid - 0.5;
      GrayImage img{height, width, {}};
      img.pixels.resize(static_cast<std::size_t>(height) * width);
      for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
          const double d2 = (r - cy) * (r - cy) + (c - cx) * (c - cx);
          const double v = 255.0 * std::exp(-d2 / (2.0 * sigma * sigma));
          img.pixels[static_cast<std::size_t>(r) * width + c] =
              static_cast<std::uint8_t>(std::lround(v));
        }
      }
      lattice.row(static_cast<Index>(images.size())) << gi, gj;
      images.push_back(std::move(img));
    }
  }
  return {ImageStack(std::move(images)), std::move(lattice)};
}

}  // namespace dmap
