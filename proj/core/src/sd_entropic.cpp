#include "ot/sd_entropic.hpp"

#include <cmath>
#include <sstream>

#include "ot/error.hpp"
#include "ot/parallel.hpp"
#include "ot/sinkhorn.hpp"

namespace ot {

namespace {

// Fixed chunking keeps the summation order independent of the thread count.
constexpr std::size_t kChunk = 2048;

void check_quadrature_eta(double eta, const char* where) {
  if (!std::isfinite(eta) || eta < kMinQuadratureEta) {
    std::ostringstream os;
    os << where << ": eta must be >= " << kMinQuadratureEta;
    throw ParameterError(os.str());
  }
}

void check_psi(const SiteSet& sites, const Potential& psi, const char* where) {
  if (static_cast<std::size_t>(psi.size()) != sites.size())
    throw_dimension_mismatch(where, static_cast<long>(sites.size()), psi.size());
}

// Exponents -(c(x, y) + psi_y) / eta.
void exponents(const Point& x, const SiteSet& sites, const Potential& psi, double eta, Vec& u) {
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    u[ki] = -(0.5 * (x - sites[k]).squaredNorm() + psi[ki]) / eta;
  }
}

template <class Acc, class Body>
Acc chunked_sum(std::size_t n, const Acc& zero, const Body& body) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Acc> partial(chunks, zero);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) body(i, partial[c]);
  });
  Acc total = zero;
  for (const Acc& p : partial) total += p;
  return total;
}

}  // namespace

const std::array<QuadratureRule::ReferenceNode, 7>& QuadratureRule::reference() {
  static const std::array<ReferenceNode, 7> nodes = [] {
    const double s = std::sqrt(15.0);
    const double a1 = (6.0 - s) / 21.0;
    const double b1 = 1.0 - 2.0 * a1;
    const double w1 = (155.0 - s) / 1200.0;
    const double a2 = (6.0 + s) / 21.0;
    const double b2 = 1.0 - 2.0 * a2;
    const double w2 = (155.0 + s) / 1200.0;
    return std::array<ReferenceNode, 7>{{
        {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 40.0},
        {{b1, a1, a1}, w1},
        {{a1, b1, a1}, w1},
        {{a1, a1, b1}, w1},
        {{b2, a2, a2}, w2},
        {{a2, b2, a2}, w2},
        {{a2, a2, b2}, w2},
    }};
  }();
  return nodes;
}

QuadratureRule::QuadratureRule(const PolygonalDensity& rho, int level) : level_(level) {
  if (level < 0 || level > kMaxLevel) {
    std::ostringstream os;
    os << "quadrature: level must be in [0, " << kMaxLevel << "]";
    throw ParameterError(os.str());
  }
  entropy_ = rho.entropy();
  const int m = 1 << level;
  const auto& ref = reference();
  std::size_t positive = 0;
  for (std::size_t t = 0; t < rho.triangle_count(); ++t)
    if (rho.density(t) > 0.0) ++positive;
  const std::size_t per_triangle = static_cast<std::size_t>(m) * static_cast<std::size_t>(m) * 7;
  nodes_.reserve(positive * per_triangle);
  weights_.reserve(positive * per_triangle);
  densities_.reserve(positive * per_triangle);

  for (std::size_t t = 0; t < rho.triangle_count(); ++t) {
    const double dens = rho.density(t);
    if (dens <= 0.0) continue;
    const auto& tri = rho.triangle(t);
    const Point e1 = (tri[1] - tri[0]) / m;
    const Point e2 = (tri[2] - tri[0]) / m;
    const double sub_area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
    auto emit = [&](const Point& p0, const Point& p1, const Point& p2) {
      for (const auto& node : ref) {
        nodes_.push_back(node.barycentric[0] * p0 + node.barycentric[1] * p1 +
                         node.barycentric[2] * p2);
        weights_.push_back(node.weight * sub_area);
        densities_.push_back(dens);
      }
    };
    for (int i = 0; i < m; ++i) {
      for (int j = 0; i + j < m; ++j) {
        const Point p = tri[0] + i * e1 + j * e2;
        emit(p, p + e1, p + e2);
        if (i + j + 1 < m) emit(p + e1, p + e1 + e2, p + e2);
      }
    }
  }
}

Vec smoothed_weights(const Point& x, const SiteSet& sites, const Potential& psi, double eta) {
  if (!(eta > 0.0)) throw ParameterError("smoothed_weights: eta must be > 0");
  check_psi(sites, psi, "smoothed_weights");
  Vec u(psi.size());
  exponents(x, sites, psi, eta, u);
  return softmax(u);
}

Vec g_eta(const SiteSet& sites, const Potential& psi, double eta, const QuadratureRule& quad) {
  check_quadrature_eta(eta, "g_eta");
  check_psi(sites, psi, "g_eta");
  const Eigen::Index n = psi.size();
  return chunked_sum<Vec>(quad.size(), Vec::Zero(n), [&](std::size_t i, Vec& acc) {
    Vec u(n);
    exponents(quad.nodes()[i], sites, psi, eta, u);
    acc += (quad.weights()[i] * quad.densities()[i]) * softmax(u);
  });
}

Mat dg_eta(const SiteSet& sites, const Potential& psi, double eta, const QuadratureRule& quad) {
  check_quadrature_eta(eta, "dg_eta");
  check_psi(sites, psi, "dg_eta");
  const Eigen::Index n = psi.size();
  Mat h = chunked_sum<Mat>(quad.size(), Mat::Zero(n, n), [&](std::size_t i, Mat& acc) {
    Vec u(n);
    exponents(quad.nodes()[i], sites, psi, eta, u);
    const Vec w = softmax(u);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(w, quad.weights()[i] * quad.densities()[i]);
  });
  h = h.selfadjointView<Eigen::Lower>();
  h /= eta;
  h.diagonal().setZero();
  for (Eigen::Index y = 0; y < n; ++y) h(y, y) = -h.row(y).sum();
  return h;
}

double k_eta(const SiteSet& sites, const Potential& psi, double eta, const Vec& nu,
             const QuadratureRule& quad) {
  check_quadrature_eta(eta, "k_eta");
  check_psi(sites, psi, "k_eta");
  if (nu.size() != psi.size()) throw_dimension_mismatch("k_eta (nu)", psi.size(), nu.size());
  const Eigen::Index n = psi.size();
  Vec zero = Vec::Zero(1);
  const Vec s = chunked_sum<Vec>(quad.size(), zero, [&](std::size_t i, Vec& acc) {
    Vec u(n);
    exponents(quad.nodes()[i], sites, psi, eta, u);
    acc[0] += quad.weights()[i] * quad.densities()[i] * log_sum_exp(u);
  });
  return -eta * s[0] + eta * quad.density_entropy() - nu.dot(psi);
}

double quadrature_estimate(const SiteSet& sites, const Potential& psi, double eta,
                           const PolygonalDensity& rho, int level) {
  if (level < 1) throw ParameterError("quadrature_estimate: level must be >= 1");
  const Vec fine = g_eta(sites, psi, eta, QuadratureRule(rho, level));
  const Vec coarse = g_eta(sites, psi, eta, QuadratureRule(rho, level - 1));
  return (fine - coarse).cwiseAbs().maxCoeff();
}

QuadratureLevel select_quadrature_level(const SiteSet& sites, const Potential& psi, double eta,
                                        const PolygonalDensity& rho, double tol, int max_level) {
  if (max_level < 1 || max_level > QuadratureRule::kMaxLevel)
    throw ParameterError("select_quadrature_level: max_level out of range");
  Vec coarse = g_eta(sites, psi, eta, QuadratureRule(rho, 0));
  QuadratureLevel out;
  for (int level = 1; level <= max_level; ++level) {
    const Vec fine = g_eta(sites, psi, eta, QuadratureRule(rho, level));
    out.level = level;
    out.estimate = (fine - coarse).cwiseAbs().maxCoeff();
    if (out.estimate <= tol) break;
    coarse = fine;
  }
  return out;
}

SdEntropicResult sd_entropic_solve(const SiteSet& sites, const PolygonalDensity& rho,
                                   const Vec& nu, double eta, double tol,
                                   const SdEntropicConfig& cfg) {
  check_quadrature_eta(eta, "sd_entropic_solve");
  check_target(nu, sites.size(), "sd_entropic_solve");
  if (!(tol > 0.0)) throw ParameterError("sd_entropic_solve: tol must be > 0");
  const Potential zero = Potential::Zero(nu.size());

  SdEntropicResult res;
  res.quad_level = cfg.quad_level >= 0
                       ? cfg.quad_level
                       : select_quadrature_level(sites, zero, eta, rho, cfg.quad_tol,
                                                 cfg.max_quad_level)
                             .level;
  const QuadratureRule quad(rho, res.quad_level);

  MassFunction g = [&](const Potential& psi, bool with_jacobian) {
    MassEvaluation ev;
    ev.masses = g_eta(sites, psi, eta, quad);
    if (with_jacobian) ev.jacobian = dg_eta(sites, psi, eta, quad).sparseView();
    return ev;
  };
  ValueFunction value = [&](const Potential& psi) { return k_eta(sites, psi, eta, nu, quad); };

  NewtonConfig ncfg = cfg.newton;
  ncfg.eta_tol = tol;
  NewtonResult nr = newton_iterate(g, value, nu, zero, 0.0, ncfg);
  res.psi = std::move(nr.psi);
  res.masses = std::move(nr.masses);
  res.trace = std::move(nr.trace);
  res.converged = nr.converged;
  if (res.quad_level >= 1) {
    res.quad_estimate = quadrature_estimate(sites, res.psi, eta, rho, res.quad_level);
  }
  return res;
}

}  // namespace ot
