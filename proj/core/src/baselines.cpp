#include "dmap/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dmap/csv.hpp"

namespace dmap {

Embedding pca_embed(const PointCloud& cloud, Index dim) {
  const Index n = cloud.size();
  const Index k = cloud.ambient_dim();
  if (dim < 1 || dim > std::min(n, k)) {
    throw std::invalid_argument("PCA dimension must lie in [1, min(N, K)]");
  }
  const Matrix centered = cloud.points().rowwise() - cloud.points().colwise().mean();

  Matrix scores;
  if (k <= n) {
    const Matrix cov = centered.transpose() * centered / static_cast<double>(n - 1);
    const SymmetricEigen eig = eigh_descending(0.5 * (cov + cov.transpose()));
    scores = centered * eig.vectors.leftCols(dim);
  } else {
    // K > N (image data): scores come from the N x N Gram matrix instead.
    const Matrix gram = centered * centered.transpose();
    const SymmetricEigen eig = eigh_descending(0.5 * (gram + gram.transpose()));
    scores.resize(n, dim);
    for (Index l = 0; l < dim; ++l) {
      scores.col(l) = eig.vectors.col(l) * std::sqrt(std::max(eig.values(l), 0.0));
    }
  }
  canonicalize_signs(scores);

  Embedding out;
  out.coords = std::move(scores);
  out.dim = dim;
  out.header = "embedding method=pca L=" + std::to_string(dim);
  return out;
}

Embedding mds_embed(const Matrix& sq_dists, Index dim) {
  require_symmetric(sq_dists, 1e-12, "mds_embed");
  const Index n = sq_dists.rows();
  if (dim < 1 || dim > n) throw std::invalid_argument("MDS dimension must lie in [1, N]");
  for (Index i = 0; i < n; ++i) {
    if (sq_dists(i, i) != 0.0) {
      throw std::invalid_argument("distance matrix must have a zero diagonal");
    }
  }

  // B = -1/2 J S J with J = I - 11^T / N, written as explicit row/column
  // mean removal.
  const Vector row_mean = sq_dists.rowwise().mean();
  const Vector col_mean = sq_dists.colwise().mean().transpose();
  const double grand = sq_dists.mean();
  Matrix b(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (sq_dists(i, j) - row_mean(i) - col_mean(j) + grand);
    }
  }
  b = 0.5 * (b + b.transpose());

  const SymmetricEigen eig = eigh_descending(b);
  Embedding out;
  out.coords.resize(n, dim);
  for (Index l = 0; l < dim; ++l) {
    double lambda = eig.values(l);
    if (lambda < 0.0) {
      out.warnings.push_back("MDS eigenvalue " + std::to_string(l) +
                             " is negative and was clipped to zero");
      lambda = 0.0;
    }
    out.coords.col(l) = eig.vectors.col(l) * std::sqrt(lambda);
  }
  canonicalize_signs(out.coords);
  out.dim = dim;
  out.header = "embedding method=mds L=" + std::to_string(dim);
  return out;
}

LaplacianEigenmap laplacian_eigenmap(const AffinityMatrix& w) {
  const DegreeVector d = degrees(w);
  for (Index i = 0; i < d.d.size(); ++i) {
    if (!(d.d(i) > 0.0)) throw std::runtime_error("zero degree in Laplacian eigenmap");
  }
  const Index n = w.size();
  const Vector inv_sqrt = d.d.cwiseSqrt().cwiseInverse();
  // I - D^-1/2 W D^-1/2, filled symmetrically.
  Matrix lsym(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = (i == j ? 1.0 : 0.0) - w.entries(i, j) * inv_sqrt(i) * inv_sqrt(j);
      lsym(i, j) = v;
      lsym(j, i) = v;
    }
  }
  // Descending order of -L gives ascending mu with the same tie handling and
  // sign convention as the diffusion-map eigenvectors.
  SymmetricEigen eig = eigh_descending(-lsym);
  LaplacianEigenmap out;
  out.mu = -eig.values;
  out.vectors = inv_sqrt.asDiagonal() * eig.vectors;
  return out;
}

Embedding laplacian_eigenmap_embed(const AffinityMatrix& w, Index dim) {
  if (dim < 1 || dim > w.size() - 1) {
    throw std::invalid_argument("embedding dimension must lie in [1, N-1]");
  }
  const LaplacianEigenmap le = laplacian_eigenmap(w);
  Embedding out;
  out.coords = le.vectors.middleCols(1, dim);
  out.dim = dim;
  out.header = "embedding method=laplacian t=" + format_real(w.config.t) +
               " L=" + std::to_string(dim);
  if (le.mu.size() > 1 && le.mu(1) < 1e-8) {
    out.warnings.emplace_back("second generalized eigenvalue is ~0: graph is disconnected");
  }
  return out;
}

}  // namespace dmap
