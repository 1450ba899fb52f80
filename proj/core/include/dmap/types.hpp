#pragma once

#include <Eigen/Dense>

namespace dmap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace dmap
