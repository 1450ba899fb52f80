#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmap/kernel.hpp"

namespace dmap {

/// Eigenpairs of a symmetric matrix, eigenvalues descending. Each column is
/// flipped so that its entry of largest magnitude is positive (the first
/// such entry on exact ties).
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

SymmetricEigen eigh_descending(const Matrix& m);

/// Applies the sign convention to every column of `m` in place.
void canonicalize_signs(Matrix& m);

struct SpectralDecomposition {
  Vector eigenvalues;   // 1 = lambda_0 >= lambda_1 >= ...
  Matrix sym_vectors;   // orthonormal eigenvectors u of K
  Matrix dm_vectors;    // f = D^-1/2 u, eigenvectors of D^-1 W
  DegreeVector degrees;
};

SpectralDecomposition eig_symmetric(const SymmetricKernel& k);

struct Embedding {
  Matrix coords;  // N x L
  Index dim = 0;
  bool weighted = false;
  double power = 0.0;
  std::string header;  // provenance line written to the CSV header
  std::vector<std::string> warnings;
};

/// Rows g_i = (f_1[i], ..., f_L[i]), optionally scaled by lambda_l^power.
/// The trivial eigenvector f_0 is never included.
Embedding diffusion_embedding(const SpectralDecomposition& dec, Index dim,
                              bool weighted = false, double power = 1.0);

/// Kernel, eigendecomposition and embedding for one cloud at config.t.
/// The header reads `embedding t=<t> alpha=<alpha> L=<dim>`.
Embedding embed_cloud(const PointCloud& cloud, const KernelConfig& config,
                      Index dim);

/// Largest absolute eigenvalue of a symmetric matrix (its spectral norm),
/// from a full dense eigensolve.
double operator_norm(const Matrix& m);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eed;
};

/// Spectral norm by power iteration on M^2 (whose dominant eigenvalue is
/// ||M||^2 regardless of sign structure).
double operator_norm_power(const Matrix& m, const PowerIterationOptions& opts = {});

/// Throws std::invalid_argument if ||M - M^T||_max > tol * max(1, ||M||_max).
void require_symmetric(const Matrix& m, double tol, const char* what);

}  // namespace dmap
