#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ot/laguerre.hpp"
#include "ot/types.hpp"

namespace ot {

// ---------------------------------------------------------------------------
// Oliker-Prussner coordinate decrements.

struct OPConfig {
  /// Target accuracy ||G(psi) - nu||_inf <= delta; needs 0 < delta < min nu.
  double delta = 1e-2;
  /// Site whose price stays pinned at 0.
  std::size_t anchor = 0;
  /// Cost oscillation over domain x sites; computed when absent.
  std::optional<double> R;
  std::int64_t max_steps = 1'000'000;
  /// Keep a copy of psi after every step in the trace.
  bool record_potentials = false;
};

struct OPStep {
  std::int64_t iter = 0;
  int site = 0;
  double t = 0.0;
  /// ||G - nu||_inf after the step.
  double residual_inf = 0.0;
  /// max over y != anchor of G_y - nu_y after the step.
  double max_excess = 0.0;
  std::int64_t bisections = 0;
  /// Time since the solver started.
  std::int64_t wall_ns = 0;
};

struct OPTrace {
  double R = 0.0;
  /// psi after initialization, before the first decrement.
  Potential initial;
  std::vector<OPStep> steps;
  /// One entry per step when OPConfig::record_potentials is set.
  std::vector<Potential> potentials;
};

struct OPResult {
  Potential psi;
  Vec masses;
  OPTrace trace;
  bool converged = false;
};

struct Decrement {
  double t = 0.0;
  /// G_y(psi - t 1_y).
  double mass = 0.0;
  std::int64_t bisections = 0;
};

/// Smallest t >= 0 with G_y(psi - t 1_y) >= nu_y, up to `tol`: the returned t
/// satisfies nu_y <= G_y(psi - t 1_y) <= nu_y + tol (unless floating point
/// resolution of t is exhausted first). The bracket starts at [0, 2R] and is
/// doubled a few times before InfeasibleError is thrown.
Decrement find_decrement(const Potential& psi, std::size_t y, double nu_y, const SiteSet& sites,
                         const PolygonalDensity& rho, double R, double tol);

/// Starts from psi = R everywhere except psi(anchor) = 0 and repeatedly lowers
/// the price of the lowest-index site y != anchor with G_y <= nu_y - delta / N
/// until its cell reaches mass nu_y. Prices only decrease.
OPResult oliker_prussner(const SiteSet& sites, const PolygonalDensity& rho, const Vec& nu,
                         const OPConfig& cfg);

// ---------------------------------------------------------------------------
// Damped Newton.

struct MassEvaluation {
  Vec masses;
  /// Jacobian of the masses (empty unless requested).
  SparseMat jacobian;
};

/// psi -> G(psi), and DG(psi) when the flag is set.
using MassFunction = std::function<MassEvaluation(const Potential&, bool)>;
/// Optional concave objective whose gradient is G - nu.
using ValueFunction = std::function<double(const Potential&)>;

struct NewtonConfig {
  /// Stop once ||G(psi) - nu||_inf < eta_tol.
  double eta_tol = 1e-8;
  int max_backtracks = 40;
  int max_iters = 100;
  std::size_t anchor = 0;
  /// Replace a starting point with empty cells by a coarse Oliker-Prussner run.
  bool seed_with_op = true;
};

struct NewtonStep {
  int iter = 0;
  /// Accepted step is 2^-backtracks.
  int backtracks = 0;
  double step = 1.0;
  double residual_before = 0.0;
  double residual_after = 0.0;
  double min_mass = 0.0;
  double pivot_ratio = 0.0;
  double linear_residual = 0.0;
  /// Objective after the step (NaN when no value function is given).
  double value = 0.0;
  /// Time since the iteration started.
  std::int64_t wall_ns = 0;
};

struct NewtonTrace {
  /// Mass floor every iterate keeps (0 when disabled).
  double eps_floor = 0.0;
  bool seeded = false;
  double initial_residual = 0.0;
  std::vector<NewtonStep> steps;
};

struct NewtonResult {
  /// Mean-zero normalized.
  Potential psi;
  Vec masses;
  NewtonTrace trace;
  bool converged = false;
};

/// Generic damped Newton iteration for G(psi) = nu. A step 2^-l v is accepted
/// once the residual satisfies
///   ||G(psi + 2^-l v) - nu||_inf <= (1 - 2^-(l+1)) ||G(psi) - nu||_inf,
/// every mass stays >= eps_floor, and (if `value` is given) the objective does
/// not decrease. Throws LineSearchError when no step length is admissible.
NewtonResult newton_iterate(const MassFunction& g, const ValueFunction& value, const Vec& nu,
                            Potential psi0, double eps_floor, const NewtonConfig& cfg);

/// Damped Newton for the exact semi-discrete problem with the floor
/// eps = 1/2 min(min G(psi0), min nu).
NewtonResult damped_newton(const SiteSet& sites, const PolygonalDensity& rho, const Vec& nu,
                           const Potential& psi0, const NewtonConfig& cfg);

/// Checks nu is a probability vector with positive entries of the right size.
void check_target(const Vec& nu, std::size_t n, const char* where);

}  // namespace ot
