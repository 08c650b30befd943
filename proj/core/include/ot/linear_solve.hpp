#pragma once

#include <cstddef>

#include <Eigen/SparseCore>

#include "ot/types.hpp"

namespace ot {

struct LinearSolveResult {
  /// Solution with sum(v) = 0.
  Vec v;
  /// |H v - r| / |r| (0 when r = 0).
  double relative_residual = 0.0;
  /// Smallest over largest pivot of the reduced factorization.
  double pivot_ratio = 0.0;
};

/// Smallest accepted pivot ratio before the reduced system counts as singular.
inline constexpr double kMinPivotRatio = 1e-14;

/// Solves H v = r for a symmetric H with zero row sums whose kernel is spanned
/// by the constant vector (negative semidefinite, rank N - 1). The coordinate
/// `anchor` is pinned to 0, the reduced system -H' is factorized with a sparse
/// LDL^T, and the full vector is projected to mean zero. Throws SingularError
/// when the reduced system is not positive definite.
LinearSolveResult solve_linear_system(const Eigen::SparseMatrix<double>& h, const Vec& r,
                                      std::size_t anchor = 0);
LinearSolveResult solve_linear_system(const Mat& h, const Vec& r, std::size_t anchor = 0);

}  // namespace ot
