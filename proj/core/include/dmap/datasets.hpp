#pragma once

#include <cstdint>

#include "dmap/image.hpp"
#include "dmap/point_cloud.hpp"

namespace dmap {

/// Swiss roll (u cos u, v, u sin u) with u ~ U[1.5 pi, 4.5 pi], v ~ U[0, 21].
/// Ground truth columns are (u, v).
PointCloud gen_swiss_roll(Index n, double noise_sigma, std::uint64_t seed);

/// Helix with `windings` turns around a torus of radii R > r > 0. The curve
/// parameter theta is sampled on the evenly spaced grid 2 pi k / n, so the
/// first point is theta = 0. Ground truth is theta.
PointCloud gen_torus_helix(Index n, double R, double r, int windings,
                           double noise_sigma, std::uint64_t seed);

/// Unit circle sampled at phi = psi + warp * sin(psi) with psi on the evenly
/// spaced grid 2 pi k / n. warp = 0 is uniform; warp -> 1 concentrates
/// points near phi = pi. Ground truth is phi.
PointCloud gen_circle(Index n, double warp, double noise_sigma,
                      std::uint64_t seed);

struct SyntheticFaces {
  ImageStack images;
  Matrix lattice;  // (row, col) lattice index of each image's blob center
};

/// grid x grid images of a Gaussian brightness blob whose center sweeps a
/// lattice over an H x W frame. Blob width is min(H, W) / 6 pixels, peak 255
/// on a black background.
SyntheticFaces gen_synthetic_faces(int grid, int height, int width);

}  // namespace dmap
