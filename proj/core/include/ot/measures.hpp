#pragma once

#include <optional>
#include <vector>

#include "ot/types.hpp"

namespace ot {

/// Finitely supported probability measure. Points are optional: a measure
/// over an abstract index set only carries weights.
class DiscreteMeasure {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws InputError unless weights are >= 0 and sum to 1 within kSumTolerance.
  explicit DiscreteMeasure(Vec weights, std::vector<Point> points = {});

  static DiscreteMeasure uniform(Eigen::Index n);

  Eigen::Index size() const { return weights_.size(); }
  const Vec& weights() const { return weights_; }
  double operator[](Eigen::Index i) const { return weights_[i]; }
  const std::vector<Point>& points() const { return points_; }
  bool has_points() const { return !points_.empty(); }
  bool all_positive() const;

 private:
  Vec weights_;
  std::vector<Point> points_;
};

/// Dense |X| x |Y| cost matrix with cached extrema.
class CostMatrix {
 public:
  explicit CostMatrix(Mat values);

  /// c(x, y) = |x - y| (Euclidean distance).
  static CostMatrix euclidean(const std::vector<Point>& xs, const std::vector<Point>& ys);
  /// c(x, y) = 1/2 |x - y|^2.
  static CostMatrix half_squared(const std::vector<Point>& xs, const std::vector<Point>& ys);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  double operator()(Eigen::Index x, Eigen::Index y) const { return values_(x, y); }
  const Mat& values() const { return values_; }

  double min() const { return min_; }
  double max() const { return max_; }
  /// max - min.
  double range() const { return max_ - min_; }
  /// (max - min) / 2, the oscillation pseudo-norm of the matrix.
  double oscillation() const { return 0.5 * (max_ - min_); }

 private:
  Mat values_;
  double min_ = 0.0;
  double max_ = 0.0;
};

struct CTransform {
  Vec values;
  /// Minimizing target index per source, lowest index on ties.
  std::vector<int> argmin;
};

/// phi(x) = min_y c(x, y) + psi(y).
CTransform c_transform(const Potential& psi, const CostMatrix& c);

/// sum_x mu_x min_y (c(x,y) + psi(y)) - sum_y nu_y psi(y).
double kantorovich_value(const Potential& psi, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu, const CostMatrix& c);

/// 1/2 (max f - min f).
double osc_norm(const Vec& f);

/// h(t) = t (log t - 1), h(0) = 0. Not defined for t < 0.
double entropy_term(double t);

struct TransportPlan {
  Mat entries;
  /// Marginal tolerance the plan is checked against.
  double tolerance = 1e-10;
};

struct PlanReport {
  double cost = 0.0;
  double row_residual = 0.0;
  double col_residual = 0.0;
  double entropy = 0.0;
  double tolerance = 1e-10;

  bool marginals_ok() const { return row_residual <= tolerance && col_residual <= tolerance; }
};

/// Transport cost, marginal residuals (infinity norm) and entropy of a plan.
/// Throws InvalidPlanError on a negative entry.
PlanReport plan_diagnostics(const TransportPlan& plan, const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, const CostMatrix& c);

}  // namespace ot
