#include "dmap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dmap/csv.hpp"

namespace dmap {

void canonicalize_signs(Matrix& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    Index arg = 0;
    double best = -1.0;
    for (Index r = 0; r < m.rows(); ++r) {
      const double a = std::abs(m(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (m(arg, c) < 0.0) m.col(c) = -m.col(c);
  }
}

void require_symmetric(const Matrix& m, double tol, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
}

SymmetricEigen eigh_descending(const Matrix& m) {
  require_symmetric(m, 1e-12, "eigh_descending");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  // Eigen returns ascending order; reverse, keeping equal values in a stable
  // order so the output is a pure function of the input.
  const Index n = m.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Vector& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return ev(a) > ev(b); });

  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values(k) = ev(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  canonicalize_signs(out.vectors);
  return out;
}

SpectralDecomposition eig_symmetric(const SymmetricKernel& k) {
  if (!k.entries.allFinite()) {
    throw std::invalid_argument("kernel has non-finite entries");
  }
  SymmetricEigen eig = eigh_descending(k.entries);
  const Vector inv_sqrt = k.degrees.d.cwiseSqrt().cwiseInverse();
  Matrix f = inv_sqrt.asDiagonal() * eig.vectors;
  return {std::move(eig.values), std::move(eig.vectors), std::move(f), k.degrees};
}

Embedding diffusion_embedding(const SpectralDecomposition& dec, Index dim,
                              bool weighted, double power) {
  const Index n = dec.eigenvalues.size();
  if (dim < 1 || dim > n - 1) {
    throw std::invalid_argument("embedding dimension must lie in [1, N-1]");
  }
  Embedding out;
  out.dim = dim;
  out.weighted = weighted;
  out.power = weighted ? power : 0.0;
  out.coords = dec.dm_vectors.middleCols(1, dim);
  if (weighted) {
    for (Index l = 0; l < dim; ++l) {
      out.coords.col(l) *= std::pow(dec.eigenvalues(l + 1), power);
    }
  }
  if (dec.eigenvalues(1) > 1.0 - 1e-8) {
    out.warnings.emplace_back(
        "lambda_1 is within 1e-8 of 1: the kernel graph is (nearly) "
        "disconnected and the embedding is not informative");
  }
  return out;
}

Embedding embed_cloud(const PointCloud& cloud, const KernelConfig& config,
                      Index dim) {
  config.validate();
  if (dim < 1 || dim >= cloud.size()) {
    throw std::invalid_argument("embedding dimension must lie in [1, N-1]");
  }
  Embedding e = diffusion_embedding(eig_symmetric(build_kernel(cloud, config)), dim);
  e.header = "embedding t=" + format_real(config.t) +
             " alpha=" + format_real(config.alpha) + " L=" + std::to_string(dim);
  return e;
}

double operator_norm(const Matrix& m) {
  require_symmetric(m, 1e-12, "operator_norm");
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  const Vector& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double operator_norm_power(const Matrix& m, const PowerIterationOptions& opts) {
  require_symmetric(m, 1e-12, "operator_norm_power");
  const Index n = m.rows();
  if (n == 0) return 0.0;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = normal(rng);
  x.normalize();

  // Iterate with M^2 so that +/- eigenvalue pairs of equal magnitude do not
  // stall convergence. The Rayleigh quotient of M^2 is ||M x||^2.
  double rho = 0.0;
  Vector y(n), z(n);
  for (int it = 0; it < opts.max_iterations; ++it) {
    y.noalias() = m * x;
    z.noalias() = m * y;
    rho = y.squaredNorm();
    if (rho == 0.0) return 0.0;
    if ((z - rho * x).norm() <= opts.tolerance * rho) break;
    x = z / z.norm();
  }
  return std::sqrt(rho);
}

}  // namespace dmap
