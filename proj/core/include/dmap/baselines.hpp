#pragma once

#include "dmap/kernel.hpp"
#include "dmap/spectral.hpp"

namespace dmap {

/// Projection of the centered cloud onto its top-L principal axes.
Embedding pca_embed(const PointCloud& cloud, Index dim);

/// Classical (Torgerson) MDS from squared distances.
Embedding mds_embed(const Matrix& sq_dists, Index dim);

struct LaplacianEigenmap {
  Vector mu;        // generalized eigenvalues of (D - W, D), ascending
  Matrix vectors;   // generalized eigenvectors f, columns matching mu
};

/// Solves (D - W) f = mu D f through I - D^-1/2 W D^-1/2.
LaplacianEigenmap laplacian_eigenmap(const AffinityMatrix& w);

/// Embeds with the eigenvectors of the L smallest generalized eigenvalues
/// after the trivial one.
Embedding laplacian_eigenmap_embed(const AffinityMatrix& w, Index dim);

}  // namespace dmap
