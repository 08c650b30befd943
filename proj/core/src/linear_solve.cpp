#include "ot/linear_solve.hpp"

#include <sstream>
#include <vector>

#include <Eigen/SparseCholesky>

#include "ot/error.hpp"

namespace ot {

LinearSolveResult solve_linear_system(const Eigen::SparseMatrix<double>& h, const Vec& r,
                                      std::size_t anchor) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw_dimension_mismatch("solve_linear_system (square)", n, h.cols());
  if (r.size() != n) throw_dimension_mismatch("solve_linear_system", n, r.size());
  if (static_cast<Eigen::Index>(anchor) >= n) throw InputError("solve_linear_system: anchor out of range");

  LinearSolveResult out;
  out.v = Vec::Zero(n);
  if (n == 1) {
    out.pivot_ratio = 1.0;
    out.relative_residual = r.norm() == 0.0 ? 0.0 : 1.0;
    return out;
  }
  const auto a = static_cast<Eigen::Index>(anchor);
  auto reduced_index = [a](Eigen::Index i) { return i < a ? i : i - 1; };

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(h.nonZeros()));
  for (Eigen::Index k = 0; k < h.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h, k); it; ++it) {
      if (it.row() == a || it.col() == a) continue;
      entries.emplace_back(reduced_index(it.row()), reduced_index(it.col()), -it.value());
    }
  }
  Eigen::SparseMatrix<double> m(n - 1, n - 1);
  m.setFromTriplets(entries.begin(), entries.end());
  Vec rhs(n - 1);
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != a) rhs[reduced_index(i)] = -r[i];

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
  if (ldlt.info() != Eigen::Success) {
    throw SingularError("solve_linear_system: factorization failed", 0.0);
  }
  const Vec d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  out.pivot_ratio = dmax > 0.0 ? d.minCoeff() / dmax : 0.0;
  if (!(out.pivot_ratio > kMinPivotRatio)) {
    std::ostringstream os;
    os << "solve_linear_system: reduced Hessian is singular or indefinite (pivot ratio "
       << out.pivot_ratio << "); sites may be non-generic or a cell may be empty";
    throw SingularError(os.str(), out.pivot_ratio);
  }
  const Vec u = ldlt.solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != a) out.v[i] = u[reduced_index(i)];
  out.v.array() -= out.v.mean();

  const double rn = r.norm();
  out.relative_residual = rn == 0.0 ? 0.0 : (h * out.v - r).norm() / rn;
  return out;
}

LinearSolveResult solve_linear_system(const Mat& h, const Vec& r, std::size_t anchor) {
  const Eigen::SparseMatrix<double> s = h.sparseView();
  return solve_linear_system(s, r, anchor);
}

}  // namespace ot
