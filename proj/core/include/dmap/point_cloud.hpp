#pragma once

#include <optional>
#include <string>

#include "dmap/types.hpp"

namespace dmap {

/// N points in a K-dimensional ambient space, one point per row.
///
/// Optionally carries the intrinsic coordinates the points were generated
/// from (one row per point), which is what the validation code compares
/// embeddings against. Construction enforces N >= 2, K >= 1 and finite
/// entries; a ground-truth matrix must have exactly N rows.
class PointCloud {
 public:
  explicit PointCloud(Matrix points, std::optional<Matrix> ground_truth = {},
                      std::string name = {});

  const Matrix& points() const { return points_; }
  const std::optional<Matrix>& ground_truth() const { return ground_truth_; }
  const std::string& name() const { return name_; }

  Index size() const { return points_.rows(); }
  Index ambient_dim() const { return points_.cols(); }

 private:
  Matrix points_;
  std::optional<Matrix> ground_truth_;
  std::string name_;
};

/// Largest pairwise Euclidean distance.
double diameter(const PointCloud& cloud);

}  // namespace dmap
