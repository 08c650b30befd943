#pragma once

#include <cstdint>
#include <vector>

#include "ot/measures.hpp"

namespace ot {

/// log(sum_i exp(v_i)), evaluated with max subtraction.
double log_sum_exp(const Eigen::Ref<const Vec>& v);

/// exp(u) / sum exp(u), evaluated in the log domain.
Vec softmax(const Eigen::Ref<const Vec>& u);

struct SinkhornConfig {
  double eta = 1.0;
  /// Stop once osc_norm(psi_{k+1} - psi_k) <= tol.
  double tol = 1e-12;
  int max_iter = 100000;
  /// Optional eta-scaling: start at eta_start (<= 0 means the cost range) and
  /// halve down to eta, warm-starting psi at each stage.
  bool eta_scaling = false;
  double eta_start = 0.0;
};

struct SinkhornIteration {
  int iter = 0;
  /// Regularization strength in effect for this iteration.
  double eta = 0.0;
  double osc_update = 0.0;
  /// Regularized dual value at the new psi (including the eta H(mu) term).
  double dual_value = 0.0;
  double row_residual = 0.0;
  double col_residual = 0.0;
  std::int64_t wall_ns = 0;
};

struct SinkhornLog {
  std::vector<SinkhornIteration> iterations;
};

struct SinkhornResult {
  Potential phi;
  Potential psi;
  TransportPlan plan;
  SinkhornLog log;
  bool converged = false;
};

/// psi^{c,eta}(x) = eta log mu_x - eta log sum_y exp((-c(x,y) - psi(y)) / eta).
Vec smoothed_c_transform(const Potential& psi, const DiscreteMeasure& mu, const CostMatrix& c,
                         double eta);

/// phi^{cbar,eta}(y) = -eta log nu_y + eta log sum_x exp((-c(x,y) + phi(x)) / eta).
Vec smoothed_cbar_transform(const Potential& phi, const DiscreteMeasure& nu, const CostMatrix& c,
                            double eta);

/// One Sinkhorn sweep S(psi) = (psi^{c,eta})^{cbar,eta}.
Vec sinkhorn_map(const Potential& psi, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                 const CostMatrix& c, double eta);

/// gamma(x,y) = exp((phi(x) - psi(y) - c(x,y)) / eta).
TransportPlan recover_plan(const Potential& phi, const Potential& psi, const CostMatrix& c,
                           double eta);

/// Alternating smoothed c-transforms from psi = 0. Requires strictly positive
/// marginals. If max_iter is reached, the partial state is returned with
/// converged = false.
SinkhornResult sinkhorn_solve(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const CostMatrix& c, const SinkhornConfig& cfg);

/// Smoothed Laguerre cell weights RLag_y(psi)(x), one row per source x. Each row
/// sums to one.
Mat smoothed_laguerre(const Potential& psi, const CostMatrix& c, double eta);

struct RegularizedKantorovich {
  double value = 0.0;
  Vec gradient;
  Mat hessian;
};

/// Regularized Kantorovich functional with its gradient G^eta - nu and Hessian.
RegularizedKantorovich reg_kant(const Potential& psi, const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu, const CostMatrix& c, double eta);

/// Value only.
double reg_kant_value(const Potential& psi, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostMatrix& c, double eta);

}  // namespace ot
