#pragma once

#include <Eigen/Core>

namespace ot {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Point = Eigen::Vector2d;

/// Dual variable over a finite set. Defined up to an additive constant.
using Potential = Eigen::VectorXd;

}  // namespace ot
