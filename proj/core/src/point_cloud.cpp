#include "dmap/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmap {

PointCloud::PointCloud(Matrix points, std::optional<Matrix> ground_truth,
                       std::string name)
    : points_(std::move(points)),
      ground_truth_(std::move(ground_truth)),
      name_(std::move(name)) {
  if (points_.rows() < 2) {
    throw std::invalid_argument("point cloud needs at least 2 points");
  }
  if (points_.cols() < 1) {
    throw std::invalid_argument("point cloud needs ambient dimension >= 1");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("point cloud contains non-finite entries");
  }
  if (ground_truth_ && ground_truth_->rows() != points_.rows()) {
    throw std::invalid_argument("ground truth row count does not match points");
  }
}

double diameter(const PointCloud& cloud) {
  const Matrix& p = cloud.points();
  double best = 0.0;
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = i + 1; j < p.rows(); ++j) {
      best = std::max(best, (p.row(i) - p.row(j)).squaredNorm());
    }
  }
  return std::sqrt(best);
}

}  // namespace dmap
