#include "ot/measures.hpp"

#include <cmath>
#include <sstream>

#include "ot/error.hpp"
#include "ot/parallel.hpp"

namespace ot {

DiscreteMeasure::DiscreteMeasure(Vec weights, std::vector<Point> points)
    : weights_(std::move(weights)), points_(std::move(points)) {
  if (weights_.size() == 0) throw InputError("measure: empty weight vector");
  if (!points_.empty() && static_cast<Eigen::Index>(points_.size()) != weights_.size()) {
    throw_dimension_mismatch("measure points", weights_.size(), static_cast<long>(points_.size()));
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      std::ostringstream os;
      os << "measure: weight " << i << " is negative or not finite (" << weights_[i] << ")";
      throw InputError(os.str());
    }
  }
  const double total = weights_.sum();
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "measure: weights sum to " << total << ", expected 1";
    throw InputError(os.str());
  }
}

DiscreteMeasure DiscreteMeasure::uniform(Eigen::Index n) {
  if (n <= 0) throw InputError("measure: uniform measure needs n > 0");
  return DiscreteMeasure(Vec::Constant(n, 1.0 / static_cast<double>(n)));
}

bool DiscreteMeasure::all_positive() const { return (weights_.array() > 0.0).all(); }

CostMatrix::CostMatrix(Mat values) : values_(std::move(values)) {
  if (values_.size() == 0) throw InputError("cost matrix: empty");
  if (!values_.allFinite()) throw InputError("cost matrix: non-finite entry");
  min_ = values_.minCoeff();
  max_ = values_.maxCoeff();
}

CostMatrix CostMatrix::euclidean(const std::vector<Point>& xs, const std::vector<Point>& ys) {
  Mat m(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) m(i, j) = (xs[i] - ys[j]).norm();
  return CostMatrix(std::move(m));
}

CostMatrix CostMatrix::half_squared(const std::vector<Point>& xs, const std::vector<Point>& ys) {
  Mat m(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) m(i, j) = 0.5 * (xs[i] - ys[j]).squaredNorm();
  return CostMatrix(std::move(m));
}

CTransform c_transform(const Potential& psi, const CostMatrix& c) {
  if (psi.size() != c.cols()) throw_dimension_mismatch("c_transform", c.cols(), psi.size());
  CTransform out{Vec(c.rows()), std::vector<int>(static_cast<std::size_t>(c.rows()))};
  parallel_for(static_cast<std::size_t>(c.rows()), [&](std::size_t xi) {
    const auto x = static_cast<Eigen::Index>(xi);
    double best = c(x, 0) + psi[0];
    int arg = 0;
    for (Eigen::Index y = 1; y < c.cols(); ++y) {
      const double v = c(x, y) + psi[y];
      if (v < best) {
        best = v;
        arg = static_cast<int>(y);
      }
    }
    out.values[x] = best;
    out.argmin[xi] = arg;
  });
  return out;
}

double kantorovich_value(const Potential& psi, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu, const CostMatrix& c) {
  if (mu.size() != c.rows()) throw_dimension_mismatch("kantorovich_value (mu)", c.rows(), mu.size());
  if (nu.size() != c.cols()) throw_dimension_mismatch("kantorovich_value (nu)", c.cols(), nu.size());
  const CTransform phi = c_transform(psi, c);
  return mu.weights().dot(phi.values) - nu.weights().dot(psi);
}

double osc_norm(const Vec& f) {
  if (f.size() == 0) throw InputError("osc_norm: empty vector");
  return 0.5 * (f.maxCoeff() - f.minCoeff());
}

double entropy_term(double t) {
  if (t == 0.0) return 0.0;
  return t * (std::log(t) - 1.0);
}

PlanReport plan_diagnostics(const TransportPlan& plan, const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, const CostMatrix& c) {
  const Mat& g = plan.entries;
  if (g.rows() != c.rows() || g.cols() != c.cols())
    throw_dimension_mismatch("plan_diagnostics", c.rows() * c.cols(), g.rows() * g.cols());
  if (mu.size() != g.rows()) throw_dimension_mismatch("plan_diagnostics (mu)", g.rows(), mu.size());
  if (nu.size() != g.cols()) throw_dimension_mismatch("plan_diagnostics (nu)", g.cols(), nu.size());

  PlanReport r;
  r.tolerance = plan.tolerance;
  for (Eigen::Index x = 0; x < g.rows(); ++x) {
    for (Eigen::Index y = 0; y < g.cols(); ++y) {
      const double v = g(x, y);
      if (!(v >= 0.0)) {
        std::ostringstream os;
        os << "plan entry (" << x << ", " << y << ") is negative: " << v;
        throw InvalidPlanError(os.str());
      }
      r.cost += v * c(x, y);
      r.entropy += entropy_term(v);
    }
  }
  r.row_residual = (g.rowwise().sum() - mu.weights()).cwiseAbs().maxCoeff();
  r.col_residual = (g.colwise().sum().transpose() - nu.weights()).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace ot
