#pragma once

#include "dmap/point_cloud.hpp"

namespace dmap {

/// Tunables for one Gaussian affinity kernel.
///
/// Affinities follow exp(-|y_i - y_j|^2 / (4t)) and are truncated to zero
/// outside the radius eps = sqrt(trunc_c * t) unless `dense` is set.
/// alpha is the density-correction exponent (0 disables it).
struct KernelConfig {
  double t = 1.0;
  double alpha = 0.0;
  double trunc_c = 64.0;
  bool dense = false;

  /// Throws std::invalid_argument unless t > 0, alpha in [0, 2], trunc_c > 4.
  void validate() const;
  KernelConfig with_t(double new_t) const;
};

/// Boolean neighbor pattern, true where j != i lies within the truncation
/// radius of i. For truncated kernels this is exactly the off-diagonal
/// nonzero pattern of W.
using NeighborMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct AffinityMatrix {
  Matrix entries;
  KernelConfig config;
  NeighborMask neighbors;
  std::vector<Index> nnz_per_row;

  Index size() const { return entries.rows(); }

  /// Wraps an explicit symmetric nonnegative matrix; the neighbor pattern is
  /// its off-diagonal nonzeros.
  static AffinityMatrix from_entries(Matrix w, KernelConfig config = {});
};

/// Row sums D_ii = sum_j W_ij.
struct DegreeVector {
  Vector d;
};

/// Row-stochastic P = D^-1 W.
struct MarkovKernel {
  Matrix entries;
  DegreeVector degrees;
};

/// K = D^-1/2 W D^-1/2, symmetric with the same spectrum as D^-1 W.
struct SymmetricKernel {
  Matrix entries;
  DegreeVector degrees;
  KernelConfig config;
};

struct KernelDiagnostics {
  Index min_neighbors = 0;
  double mean_neighbors = 0.0;
  Index max_neighbors = 0;
  Index components = 0;
};

/// Squared Euclidean distances, computed per pair from coordinate
/// differences. Zero diagonal, exactly symmetric.
Matrix pairwise_sq_dists(const PointCloud& cloud);

AffinityMatrix affinity(const Matrix& sq_dists, const KernelConfig& config);

DegreeVector degrees(const AffinityMatrix& w);

MarkovKernel markov_normalize(const AffinityMatrix& w, const DegreeVector& d);

SymmetricKernel symmetric_normalize(const AffinityMatrix& w,
                                    const DegreeVector& d);

/// W_ij / (q_i^alpha q_j^alpha) with q the row sums of W.
AffinityMatrix alpha_renormalize(const AffinityMatrix& w, double alpha);

enum class Connectivity { kAllowIsolated, kRequireNoIsolated };

/// distances -> affinity -> alpha renormalization -> degrees -> symmetric
/// normalization. With kRequireNoIsolated, throws std::runtime_error if some
/// point has no neighbor inside the truncation radius.
SymmetricKernel build_kernel(const PointCloud& cloud,
                             const KernelConfig& config,
                             Connectivity connectivity = Connectivity::kAllowIsolated);

/// Same pipeline starting from precomputed squared distances.
SymmetricKernel build_kernel_from_sq_dists(
    const Matrix& sq_dists, const KernelConfig& config,
    Connectivity connectivity = Connectivity::kAllowIsolated);

/// Neighbor statistics and connected components of the neighbor graph.
KernelDiagnostics diagnostics(const AffinityMatrix& w);

}  // namespace dmap
