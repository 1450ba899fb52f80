#include "dmap/kernel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dmap {

void KernelConfig::validate() const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("diffusion time t must be positive and finite");
  }
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("alpha must lie in [0, 2]");
  }
  if (!(trunc_c > 4.0)) {
    throw std::invalid_argument("truncation constant C must exceed 4");
  }
}

KernelConfig KernelConfig::with_t(double new_t) const {
  KernelConfig c = *this;
  c.t = new_t;
  return c;
}

namespace {

std::vector<Index> count_rows(const NeighborMask& mask) {
  std::vector<Index> counts(static_cast<std::size_t>(mask.rows()));
  for (Index i = 0; i < mask.rows(); ++i) {
    counts[static_cast<std::size_t>(i)] = mask.row(i).count();
  }
  return counts;
}

void require_positive(const DegreeVector& d) {
  for (Index i = 0; i < d.d.size(); ++i) {
    if (!(d.d(i) > 0.0)) {
      throw std::runtime_error("nonpositive degree at row " + std::to_string(i));
    }
  }
}

}  // namespace

AffinityMatrix AffinityMatrix::from_entries(Matrix w, KernelConfig config) {
  const Index n = w.rows();
  if (w.cols() != n) throw std::invalid_argument("affinity must be square");
  NeighborMask mask = (w.array() != 0.0);
  for (Index i = 0; i < n; ++i) mask(i, i) = false;
  AffinityMatrix out{std::move(w), config, std::move(mask), {}};
  out.nnz_per_row = count_rows(out.neighbors);
  return out;
}

Matrix pairwise_sq_dists(const PointCloud& cloud) {
  const Matrix& p = cloud.points();
  const Index n = p.rows();
  const Index k = p.cols();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (Index c = 0; c < k; ++c) {
        const double diff = p(i, c) - p(j, c);
        s += diff * diff;
      }
      d(i, j) = s;
      d(j, i) = s;
    }
  }
  return d;
}

AffinityMatrix affinity(const Matrix& sq_dists, const KernelConfig& config) {
  config.validate();
  const Index n = sq_dists.rows();
  if (sq_dists.cols() != n) throw std::invalid_argument("distance matrix must be square");

  const double cutoff = config.trunc_c * config.t;
  const double scale = 1.0 / (4.0 * config.t);
  Matrix w(n, n);
  NeighborMask mask(n, n);
  for (Index i = 0; i < n; ++i) {
    if (sq_dists(i, i) != 0.0) {
      throw std::invalid_argument("distance matrix must have a zero diagonal");
    }
    w(i, i) = 1.0;
    mask(i, i) = false;
    for (Index j = i + 1; j < n; ++j) {
      const double s = sq_dists(i, j);
      if (s != sq_dists(j, i)) throw std::invalid_argument("distance matrix is not symmetric");
      if (!(s >= 0.0)) throw std::invalid_argument("distance matrix has negative entries");
      const bool inside = s < cutoff;
      const double v = (inside || config.dense) ? std::exp(-s * scale) : 0.0;
      w(i, j) = v;
      w(j, i) = v;
      mask(i, j) = inside;
      mask(j, i) = inside;
    }
  }
  AffinityMatrix out{std::move(w), config, std::move(mask), {}};
  out.nnz_per_row = count_rows(out.neighbors);
  return out;
}

DegreeVector degrees(const AffinityMatrix& w) {
  const Index n = w.size();
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) s += w.entries(i, j);
    d(i) = s;
  }
  return {std::move(d)};
}

MarkovKernel markov_normalize(const AffinityMatrix& w, const DegreeVector& d) {
  require_positive(d);
  Matrix p = d.d.cwiseInverse().asDiagonal() * w.entries;
  return {std::move(p), d};
}

SymmetricKernel symmetric_normalize(const AffinityMatrix& w, const DegreeVector& d) {
  require_positive(d);
  const Index n = w.size();
  const Vector inv_sqrt = d.d.cwiseSqrt().cwiseInverse();
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    k(i, i) = w.entries(i, i) * inv_sqrt(i) * inv_sqrt(i);
    for (Index j = i + 1; j < n; ++j) {
      const double v = w.entries(i, j) * inv_sqrt(i) * inv_sqrt(j);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return {std::move(k), d, w.config};
}

AffinityMatrix alpha_renormalize(const AffinityMatrix& w, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("alpha must lie in [0, 2]");
  }
  if (alpha == 0.0) return w;

  const DegreeVector q = degrees(w);
  require_positive(q);
  const Index n = w.size();
  Vector q_pow(n);
  for (Index i = 0; i < n; ++i) q_pow(i) = std::pow(q.d(i), alpha);

  AffinityMatrix out = w;
  for (Index i = 0; i < n; ++i) {
    out.entries(i, i) = w.entries(i, i) / (q_pow(i) * q_pow(i));
    for (Index j = i + 1; j < n; ++j) {
      const double v = w.entries(i, j) / (q_pow(i) * q_pow(j));
      out.entries(i, j) = v;
      out.entries(j, i) = v;
    }
  }
  out.config.alpha = alpha;
  return out;
}

SymmetricKernel build_kernel_from_sq_dists(const Matrix& sq_dists,
                                           const KernelConfig& config,
                                           Connectivity connectivity) {
  AffinityMatrix w = affinity(sq_dists, config);
  if (connectivity == Connectivity::kRequireNoIsolated) {
    for (std::size_t i = 0; i < w.nnz_per_row.size(); ++i) {
      if (w.nnz_per_row[i] == 0) {
        throw std::runtime_error("point " + std::to_string(i) +
                                 " has no neighbor inside the truncation radius");
      }
    }
  }
  w = alpha_renormalize(w, config.alpha);
  const DegreeVector d = degrees(w);
  return symmetric_normalize(w, d);
}

SymmetricKernel build_kernel(const PointCloud& cloud, const KernelConfig& config,
                             Connectivity connectivity) {
  return build_kernel_from_sq_dists(pairwise_sq_dists(cloud), config, connectivity);
}

namespace {

Index find_root(std::vector<Index>& parent, Index x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    auto& p = parent[static_cast<std::size_t>(x)];
    p = parent[static_cast<std::size_t>(p)];
    x = p;
  }
  return x;
}

}  // namespace

KernelDiagnostics diagnostics(const AffinityMatrix& w) {
  const Index n = w.size();
  KernelDiagnostics out;
  if (n == 0) return out;

  out.min_neighbors = n;
  Index total = 0;
  for (Index c : w.nnz_per_row) {
    out.min_neighbors = std::min(out.min_neighbors, c);
    out.max_neighbors = std::max(out.max_neighbors, c);
    total += c;
  }
  out.mean_neighbors = static_cast<double>(total) / static_cast<double>(n);

  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  Index components = n;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (!w.neighbors(i, j)) continue;
      const Index a = find_root(parent, i);
      const Index b = find_root(parent, j);
      if (a != b) {
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        --components;
      }
    }
  }
  out.components = components;
  return out;
}

}  // namespace dmap
