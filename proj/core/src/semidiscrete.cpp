#include "ot/semidiscrete.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "ot/error.hpp"
#include "ot/linear_solve.hpp"

namespace ot {

namespace {

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                              start)
      .count();
}

}  // namespace

void check_target(const Vec& nu, std::size_t n, const char* where) {
  if (static_cast<std::size_t>(nu.size()) != n)
    throw_dimension_mismatch(where, static_cast<long>(n), nu.size());
  if (!nu.allFinite() || nu.minCoeff() <= 0.0)
    throw ParameterError(std::string(where) + ": target masses must be > 0");
  if (std::abs(nu.sum() - 1.0) > 1e-12)
    throw InputError(std::string(where) + ": target masses must sum to 1");
}

Decrement find_decrement(const Potential& psi, std::size_t y, double nu_y, const SiteSet& sites,
                         const PolygonalDensity& rho, double R, double tol) {
  const auto yi = static_cast<Eigen::Index>(y);
  Potential p = psi;
  auto mass_at = [&](double t) {
    p[yi] = psi[yi] - t;
    return cell_mass(sites, p, rho, y);
  };
  Decrement d;
  d.mass = mass_at(0.0);
  if (d.mass >= nu_y) return d;

  double lo = 0.0;
  double hi = R > 0.0 ? 2.0 * R : rho.diameter() * rho.diameter();
  double g_hi = mass_at(hi);
  for (int k = 0; k < 8 && g_hi < nu_y; ++k) {
    lo = hi;
    hi *= 2.0;
    g_hi = mass_at(hi);
  }
  if (g_hi < nu_y) {
    std::ostringstream os;
    os << "find_decrement: site " << y << " reaches mass " << g_hi << " < " << nu_y
       << " even after lowering its price by " << hi;
    throw InfeasibleError(os.str());
  }
  // Invariant: G(lo) < nu_y <= G(hi).
  while (g_hi > nu_y + tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = mass_at(mid);
    ++d.bisections;
    if (g >= nu_y) {
      hi = mid;
      g_hi = g;
    } else {
      lo = mid;
    }
  }
  d.t = hi;
  d.mass = g_hi;
  return d;
}

OPResult oliker_prussner(const SiteSet& sites, const PolygonalDensity& rho, const Vec& nu,
                         const OPConfig& cfg) {
  const std::size_t n = sites.size();
  check_target(nu, n, "oliker_prussner");
  if (cfg.anchor >= n) throw ParameterError("oliker_prussner: anchor out of range");
  if (!(cfg.delta > 0.0) || (n > 1 && !(cfg.delta < nu.minCoeff())))
    throw ParameterError("oliker_prussner: delta must satisfy 0 < delta < min nu");
  const double R = cfg.R ? *cfg.R : cost_oscillation(sites, rho);
  if (!(R >= 0.0)) throw ParameterError("oliker_prussner: R must be >= 0");

  const auto start = std::chrono::steady_clock::now();
  OPResult res;
  res.trace.R = R;
  res.psi = Potential::Constant(static_cast<Eigen::Index>(n), R);
  res.psi[static_cast<Eigen::Index>(cfg.anchor)] = 0.0;
  res.trace.initial = res.psi;
  res.masses = cell_masses(sites, res.psi, rho);

  const double threshold = cfg.delta / static_cast<double>(n);
  const double tol = cfg.delta / (4.0 * static_cast<double>(n));
  for (std::int64_t iter = 0;; ++iter) {
    std::size_t y = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == cfg.anchor) continue;
      const auto ki = static_cast<Eigen::Index>(k);
      if (res.masses[ki] <= nu[ki] - threshold) {
        y = k;
        break;
      }
    }
    if (y == n) {
      res.converged = true;
      break;
    }
    if (iter >= cfg.max_steps) break;

    const auto yi = static_cast<Eigen::Index>(y);
    const Decrement d = find_decrement(res.psi, y, nu[yi], sites, rho, R, tol);
    res.psi[yi] -= d.t;
    res.masses = cell_masses(sites, res.psi, rho);

    OPStep s;
    s.iter = iter + 1;
    s.site = static_cast<int>(y);
    s.t = d.t;
    s.bisections = d.bisections;
    s.wall_ns = elapsed_ns(start);
    s.residual_inf = (res.masses - nu).cwiseAbs().maxCoeff();
    s.max_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (k == cfg.anchor) continue;
      const auto ki = static_cast<Eigen::Index>(k);
      s.max_excess = std::max(s.max_excess, res.masses[ki] - nu[ki]);
    }
    res.trace.steps.push_back(s);
    if (cfg.record_potentials) res.trace.potentials.push_back(res.psi);
  }
  return res;
}

NewtonResult newton_iterate(const MassFunction& g, const ValueFunction& value, const Vec& nu,
                            Potential psi0, double eps_floor, const NewtonConfig& cfg) {
  if (!(cfg.eta_tol > 0.0)) throw ParameterError("newton: eta_tol must be > 0");
  if (cfg.max_backtracks < 0 || cfg.max_iters < 0)
    throw ParameterError("newton: iteration budgets must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  NewtonResult res;
  res.trace.eps_floor = eps_floor;
  res.psi = std::move(psi0);
  res.psi.array() -= res.psi.mean();

  MassEvaluation ev = g(res.psi, true);
  double residual = (ev.masses - nu).cwiseAbs().maxCoeff();
  double current_value = value ? value(res.psi) : std::numeric_limits<double>::quiet_NaN();
  res.trace.initial_residual = residual;

  for (int iter = 1; residual >= cfg.eta_tol; ++iter) {
    if (iter > cfg.max_iters) {
      res.masses = ev.masses;
      return res;
    }
    Vec r = nu - ev.masses;
    r.array() -= r.mean();
    const LinearSolveResult lin = solve_linear_system(ev.jacobian, r, cfg.anchor);

    bool accepted = false;
    for (int l = 0; l <= cfg.max_backtracks; ++l) {
      const double tau = std::ldexp(1.0, -l);
      Potential trial = res.psi + tau * lin.v;
      trial.array() -= trial.mean();
      const Vec m = g(trial, false).masses;
      const double trial_residual = (m - nu).cwiseAbs().maxCoeff();
      if (eps_floor > 0.0 && m.minCoeff() < eps_floor) continue;
      if (trial_residual > (1.0 - std::ldexp(1.0, -(l + 1))) * residual) continue;
      double trial_value = std::numeric_limits<double>::quiet_NaN();
      if (value) {
        trial_value = value(trial);
        if (trial_value < current_value - 1e-13 * (1.0 + std::abs(current_value))) continue;
      }
      NewtonStep s;
      s.iter = iter;
      s.backtracks = l;
      s.step = tau;
      s.residual_before = residual;
      s.residual_after = trial_residual;
      s.min_mass = m.minCoeff();
      s.pivot_ratio = lin.pivot_ratio;
      s.linear_residual = lin.relative_residual;
      s.value = trial_value;
      s.wall_ns = elapsed_ns(start);
      res.trace.steps.push_back(s);
      res.psi = std::move(trial);
      residual = trial_residual;
      current_value = trial_value;
      accepted = true;
      break;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "newton: no admissible step after " << cfg.max_backtracks
         << " halvings at iteration " << iter << " (residual " << residual << ")";
      throw LineSearchError(os.str());
    }
    ev = g(res.psi, residual >= cfg.eta_tol);
  }
  res.masses = ev.masses;
  res.converged = true;
  return res;
}

NewtonResult damped_newton(const SiteSet& sites, const PolygonalDensity& rho, const Vec& nu,
                           const Potential& psi0, const NewtonConfig& cfg) {
  const std::size_t n = sites.size();
  check_target(nu, n, "damped_newton");
  if (static_cast<std::size_t>(psi0.size()) != n)
    throw_dimension_mismatch("damped_newton (psi0)", static_cast<long>(n), psi0.size());
  if (cfg.anchor >= n) throw ParameterError("damped_newton: anchor out of range");

  Potential start = psi0;
  Vec g0 = cell_masses(sites, start, rho);
  bool seeded = false;
  if (g0.minCoeff() <= 0.0 && n > 1 && cfg.seed_with_op) {
    OPConfig op;
    op.delta = 0.5 * nu.minCoeff();
    op.anchor = cfg.anchor;
    start = oliker_prussner(sites, rho, nu, op).psi;
    g0 = cell_masses(sites, start, rho);
    seeded = true;
  }
  if (g0.minCoeff() <= 0.0) {
    throw ParameterError("damped_newton: starting point has an empty cell");
  }
  const double eps = 0.5 * std::min(g0.minCoeff(), nu.minCoeff());

  MassFunction g = [&](const Potential& psi, bool with_jacobian) {
    MassEvaluation ev;
    if (with_jacobian) {
      const LaguerreDiagram d = build_diagram(sites, psi, rho);
      ev.masses = cell_masses(d, rho);
      ev.jacobian = edge_integrals(d, rho);
    } else {
      ev.masses = cell_masses(sites, psi, rho);
    }
    return ev;
  };
  NewtonResult res = newton_iterate(g, ValueFunction{}, nu, start, eps, cfg);
  res.trace.seeded = seeded;
  return res;
}

}  // namespace ot
