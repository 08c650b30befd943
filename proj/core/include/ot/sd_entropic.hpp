#pragma once

#include <array>
#include <vector>

#include "ot/laguerre.hpp"
#include "ot/semidiscrete.hpp"
#include "ot/types.hpp"

namespace ot {

/// Smallest regularization accepted by the quadrature-based routines.
inline constexpr double kMinQuadratureEta = 1e-4;

/// Seven-point degree-5 rule on every triangle of a density, after splitting
/// each triangle uniformly into 4^level congruent pieces. Triangles with zero
/// density contribute no nodes.
class QuadratureRule {
 public:
  static constexpr int kDegree = 5;
  static constexpr int kMaxLevel = 10;

  struct ReferenceNode {
    std::array<double, 3> barycentric;
    /// Fraction of the triangle area; the seven fractions sum to 1.
    double weight;
  };
  static const std::array<ReferenceNode, 7>& reference();

  QuadratureRule(const PolygonalDensity& rho, int level);

  int level() const { return level_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Point>& nodes() const { return nodes_; }
  /// Area weight of each node.
  const std::vector<double>& weights() const { return weights_; }
  /// Density at each node.
  const std::vector<double>& densities() const { return densities_; }
  /// int rho log rho of the underlying density.
  double density_entropy() const { return entropy_; }

 private:
  int level_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  std::vector<double> densities_;
  double entropy_ = 0.0;
};

/// w_y(x) = exp(-(c(x,y) + psi_y) / eta) / sum_z exp(-(c(x,z) + psi_z) / eta),
/// c(x, y) = 1/2 |x - y|^2, evaluated with max subtraction.
Vec smoothed_weights(const Point& x, const SiteSet& sites, const Potential& psi, double eta);

/// G^eta_y = int w_y rho.
Vec g_eta(const SiteSet& sites, const Potential& psi, double eta, const QuadratureRule& quad);

/// Jacobian of G^eta: off-diagonal (1/eta) int w_y w_z rho, diagonal minus
/// the off-diagonal row sum.
Mat dg_eta(const SiteSet& sites, const Potential& psi, double eta, const QuadratureRule& quad);

/// K^eta(psi) = -eta int rho log sum_y exp(-(c(., y) + psi_y) / eta)
///             + eta int rho log rho - <psi, nu>.
double k_eta(const SiteSet& sites, const Potential& psi, double eta, const Vec& nu,
             const QuadratureRule& quad);

struct QuadratureLevel {
  int level = 0;
  /// ||G^eta at this level - G^eta one level coarser||_inf.
  double estimate = 0.0;
};

/// Quadrature self-estimate at a given level (level >= 1).
double quadrature_estimate(const SiteSet& sites, const Potential& psi, double eta,
                           const PolygonalDensity& rho, int level);

/// Refines until the self-estimate is <= tol or max_level is reached.
QuadratureLevel select_quadrature_level(const SiteSet& sites, const Potential& psi, double eta,
                                        const PolygonalDensity& rho, double tol = 1e-8,
                                        int max_level = 8);

struct SdEntropicConfig {
  /// Fixed refinement level; negative selects it adaptively at psi = 0.
  int quad_level = -1;
  double quad_tol = 1e-8;
  int max_quad_level = 8;
  NewtonConfig newton;
};

struct SdEntropicResult {
  /// Mean-zero normalized.
  Potential psi;
  Vec masses;
  NewtonTrace trace;
  int quad_level = 0;
  /// Self-estimate at the returned psi.
  double quad_estimate = 0.0;
  bool converged = false;
};

/// Newton ascent on K^eta until ||G^eta(psi) - nu||_inf < tol. Every accepted
/// step decreases the residual and does not decrease K^eta.
SdEntropicResult sd_entropic_solve(const SiteSet& sites, const PolygonalDensity& rho,
                                   const Vec& nu, double eta, double tol,
                                   const SdEntropicConfig& cfg = {});

}  // namespace ot
