#include "ot/sinkhorn.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ot/error.hpp"
#include "ot/parallel.hpp"

namespace ot {

double log_sum_exp(const Eigen::Ref<const Vec>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

Vec softmax(const Eigen::Ref<const Vec>& u) {
  const double lse = log_sum_exp(u);
  return (u.array() - lse).exp().matrix();
}

namespace {

void check_eta(double eta, const char* where) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError(std::string(where) + ": eta must be a positive finite number");
  }
}

void check_positive(const DiscreteMeasure& m, const char* where) {
  if (!m.all_positive()) {
    throw ParameterError(std::string(where) + ": all measure weights must be > 0");
  }
}

// Row x: -eta * log sum_y exp((-c(x,y) - psi(y)) / eta).
Vec soft_min_rows(const Potential& psi, const CostMatrix& c, double eta) {
  Vec out(c.rows());
  parallel_for(static_cast<std::size_t>(c.rows()), [&](std::size_t xi) {
    const auto x = static_cast<Eigen::Index>(xi);
    const Vec u = (-(c.values().row(x).transpose() + psi) / eta).eval();
    out[x] = -eta * log_sum_exp(u);
  });
  return out;
}

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                              start)
      .count();
}

}  // namespace

Vec smoothed_c_transform(const Potential& psi, const DiscreteMeasure& mu, const CostMatrix& c,
                         double eta) {
  check_eta(eta, "smoothed_c_transform");
  check_positive(mu, "smoothed_c_transform");
  if (psi.size() != c.cols()) throw_dimension_mismatch("smoothed_c_transform", c.cols(), psi.size());
  if (mu.size() != c.rows()) throw_dimension_mismatch("smoothed_c_transform (mu)", c.rows(), mu.size());
  return (eta * mu.weights().array().log()).matrix() + soft_min_rows(psi, c, eta);
}

Vec smoothed_cbar_transform(const Potential& phi, const DiscreteMeasure& nu, const CostMatrix& c,
                            double eta) {
  check_eta(eta, "smoothed_cbar_transform");
  check_positive(nu, "smoothed_cbar_transform");
  if (phi.size() != c.rows()) throw_dimension_mismatch("smoothed_cbar_transform", c.rows(), phi.size());
  if (nu.size() != c.cols()) throw_dimension_mismatch("smoothed_cbar_transform (nu)", c.cols(), nu.size());
  Vec out(c.cols());
  parallel_for(static_cast<std::size_t>(c.cols()), [&](std::size_t yi) {
    const auto y = static_cast<Eigen::Index>(yi);
    const Vec u = ((phi - c.values().col(y)) / eta).eval();
    out[y] = -eta * std::log(nu[y]) + eta * log_sum_exp(u);
  });
  return out;
}

Vec sinkhorn_map(const Potential& psi, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                 const CostMatrix& c, double eta) {
  return smoothed_cbar_transform(smoothed_c_transform(psi, mu, c, eta), nu, c, eta);
}

TransportPlan recover_plan(const Potential& phi, const Potential& psi, const CostMatrix& c,
                           double eta) {
  check_eta(eta, "recover_plan");
  Mat g(c.rows(), c.cols());
  for (Eigen::Index y = 0; y < c.cols(); ++y)
    for (Eigen::Index x = 0; x < c.rows(); ++x)
      g(x, y) = std::exp((phi[x] - psi[y] - c(x, y)) / eta);
  return TransportPlan{std::move(g)};
}

double reg_kant_value(const Potential& psi, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostMatrix& c, double eta) {
  check_eta(eta, "reg_kant");
  check_positive(mu, "reg_kant");
  if (psi.size() != c.cols()) throw_dimension_mismatch("reg_kant", c.cols(), psi.size());
  const Vec phi = smoothed_c_transform(psi, mu, c, eta);
  return mu.weights().dot(phi) - nu.weights().dot(psi);
}

SinkhornResult sinkhorn_solve(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const CostMatrix& c, const SinkhornConfig& cfg) {
  check_eta(cfg.eta, "sinkhorn_solve");
  if (!(cfg.tol > 0.0)) throw ParameterError("sinkhorn_solve: tol must be > 0");
  if (cfg.max_iter <= 0) throw ParameterError("sinkhorn_solve: max_iter must be > 0");
  check_positive(mu, "sinkhorn_solve");
  check_positive(nu, "sinkhorn_solve");
  if (mu.size() != c.rows()) throw_dimension_mismatch("sinkhorn_solve (mu)", c.rows(), mu.size());
  if (nu.size() != c.cols()) throw_dimension_mismatch("sinkhorn_solve (nu)", c.cols(), nu.size());

  std::vector<double> schedule;
  if (cfg.eta_scaling) {
    double e = cfg.eta_start > 0.0 ? cfg.eta_start : c.range();
    while (e > cfg.eta) {
      schedule.push_back(e);
      e *= 0.5;
    }
  }
  schedule.push_back(cfg.eta);

  SinkhornResult r;
  r.psi = Potential::Zero(c.cols());
  r.phi = Potential::Zero(c.rows());
  const auto start = std::chrono::steady_clock::now();
  int iter = 0;
  for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
    const double eta = schedule[stage];
    const bool last_stage = stage + 1 == schedule.size();
    bool stage_converged = false;
    while (iter < cfg.max_iter) {
      ++iter;
      const Vec phi = smoothed_c_transform(r.psi, mu, c, eta);
      const Vec psi = smoothed_cbar_transform(phi, nu, c, eta);
      const double osc = osc_norm(psi - r.psi);
      r.phi = phi;
      r.psi = psi;

      const TransportPlan plan = recover_plan(r.phi, r.psi, c, eta);
      SinkhornIteration it;
      it.iter = iter;
      it.eta = eta;
      it.osc_update = osc;
      it.dual_value = reg_kant_value(r.psi, mu, nu, c, eta);
      it.row_residual = (plan.entries.rowwise().sum() - mu.weights()).cwiseAbs().maxCoeff();
      it.col_residual =
          (plan.entries.colwise().sum().transpose() - nu.weights()).cwiseAbs().maxCoeff();
      it.wall_ns = elapsed_ns(start);
      r.log.iterations.push_back(it);

      if (osc <= cfg.tol) {
        stage_converged = true;
        break;
      }
    }
    if (!stage_converged) break;
    if (last_stage) r.converged = true;
  }
  r.plan = recover_plan(r.phi, r.psi, c, cfg.eta);
  return r;
}

Mat smoothed_laguerre(const Potential& psi, const CostMatrix& c, double eta) {
  check_eta(eta, "smoothed_laguerre");
  if (psi.size() != c.cols()) throw_dimension_mismatch("smoothed_laguerre", c.cols(), psi.size());
  Mat w(c.rows(), c.cols());
  parallel_for(static_cast<std::size_t>(c.rows()), [&](std::size_t xi) {
    const auto x = static_cast<Eigen::Index>(xi);
    const Vec u = (-(c.values().row(x).transpose() + psi) / eta).eval();
    w.row(x) = softmax(u).transpose();
  });
  return w;
}

RegularizedKantorovich reg_kant(const Potential& psi, const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu, const CostMatrix& c, double eta) {
  if (nu.size() != c.cols()) throw_dimension_mismatch("reg_kant (nu)", c.cols(), nu.size());
  RegularizedKantorovich r;
  r.value = reg_kant_value(psi, mu, nu, c, eta);
  const Mat w = smoothed_laguerre(psi, c, eta);
  const Vec& m = mu.weights();
  r.gradient = w.transpose() * m - nu.weights();
  // Off-diagonal (1/eta) <RLag_y RLag_z, mu>; diagonal from zero row sums.
  r.hessian = (w.transpose() * m.asDiagonal() * w) / eta;
  r.hessian.diagonal().setZero();
  for (Eigen::Index y = 0; y < r.hessian.rows(); ++y) r.hessian(y, y) = -r.hessian.row(y).sum();
  return r;
}

}  // namespace ot
