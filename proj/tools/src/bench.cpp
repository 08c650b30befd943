#include "otcli/bench.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "ot/auction.hpp"
#include "ot/sd_entropic.hpp"
#include "ot/semidiscrete.hpp"
#include "ot/sinkhorn.hpp"

namespace otcli {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  ot::Mat matrix(int r, int c) {
    ot::Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = uniform(0.0, 1.0);
    return m;
  }

  ot::Vec simplex(int n) {
    ot::Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = uniform(0.5, 1.5);
    return w / w.sum();
  }

  // Rejection sampling in [0.05, 0.95]^2 with spacing 0.5 / sqrt(n).
  std::vector<ot::Point> sites(int n) {
    const double min_dist = 0.5 / std::sqrt(static_cast<double>(n));
    std::vector<ot::Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      const ot::Point p(uniform(0.05, 0.95), uniform(0.05, 0.95));
      bool ok = true;
      for (const ot::Point& q : pts) ok = ok && (p - q).norm() >= min_dist;
      if (ok) pts.push_back(p);
    }
    return pts;
  }

 private:
  std::mt19937_64 gen_;
};

struct Row {
  std::string name;
  int n;
  double parameter;
  std::int64_t iterations;
  bool converged;
};

}  // namespace

std::string bench_suite_csv(std::uint64_t seed) {
  Draw draw(seed);
  std::vector<Row> rows;

  for (int n : {4, 8}) {
    const ot::CostMatrix c(draw.matrix(n, n));
    const auto plain = ot::auction(c, 1e-2);
    rows.push_back({"auction", n, 1e-2, static_cast<std::int64_t>(plain.trace.steps.size()), true});
    const auto scaled = ot::auction_scaled(c, 1e-3);
    rows.push_back({"auction_scaled", n, 1e-3, scaled.total_steps(), true});
  }
  {
    const std::vector<ot::Point> xs{ot::Point(-1, 0), ot::Point(-2, 0), ot::Point(-3, 0)};
    const std::vector<ot::Point> ys{ot::Point(0, 1), ot::Point(0, -1), ot::Point(10, 0)};
    const auto c = ot::CostMatrix::euclidean(xs, ys);
    rows.push_back({"auction_three_houses", 3, 1e-3,
                    static_cast<std::int64_t>(ot::auction(c, 1e-3).trace.steps.size()), true});
    rows.push_back({"auction_scaled_three_houses", 3, 1e-3, ot::auction_scaled(c, 1e-3).total_steps(), true});
  }
  for (double eta : {1.0, 0.1}) {
    const ot::CostMatrix c(draw.matrix(10, 10));
    const ot::DiscreteMeasure mu(draw.simplex(10));
    const ot::DiscreteMeasure nu(draw.simplex(10));
    ot::SinkhornConfig cfg;
    cfg.eta = eta;
    cfg.tol = 1e-12;
    const auto r = ot::sinkhorn_solve(mu, nu, c, cfg);
    rows.push_back({"sinkhorn", 10, eta, static_cast<std::int64_t>(r.log.iterations.size()), r.converged});
  }

  const auto rho = ot::PolygonalDensity::unit_square();
  {
    const ot::SiteSet sites(draw.sites(10));
    const ot::Vec nu = ot::Vec::Constant(10, 0.1);
    ot::OPConfig cfg;
    cfg.delta = 1e-2;
    const auto r = ot::oliker_prussner(sites, rho, nu, cfg);
    rows.push_back({"oliker_prussner", 10, 1e-2, static_cast<std::int64_t>(r.trace.steps.size()), r.converged});
  }
  for (int n : {20, 50}) {
    const ot::SiteSet sites(draw.sites(n));
    const ot::Vec nu = draw.simplex(n);
    ot::NewtonConfig cfg;
    cfg.eta_tol = 1e-8;
    const auto r = ot::damped_newton(sites, rho, nu, ot::Vec::Zero(n), cfg);
    rows.push_back({"damped_newton", n, 1e-8, static_cast<std::int64_t>(r.trace.steps.size()), r.converged});
  }
  {
    const ot::SiteSet sites(draw.sites(5));
    const ot::Vec nu = draw.simplex(5);
    ot::SdEntropicConfig cfg;
    cfg.quad_level = 3;
    const auto r = ot::sd_entropic_solve(sites, rho, nu, 0.05, 1e-9, cfg);
    rows.push_back({"sd_entropic", 5, 0.05, static_cast<std::int64_t>(r.trace.steps.size()), r.converged});
  }

  std::ostringstream os;
  os << "case,n,parameter,iterations,converged\n";
  for (const Row& r : rows) {
    char param[32];
    std::snprintf(param, sizeof param, "%g", r.parameter);
    os << r.name << ',' << r.n << ',' << param << ',' << r.iterations << ',' << (r.converged ? 1 : 0)
       << '\n';
  }
  return os.str();
}

}  // namespace otcli
