#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "ot/error.hpp"
#include "ot/sinkhorn.hpp"

using namespace ot;

namespace {

CostMatrix swap2() { return CostMatrix((Mat(2, 2) << 0, 1, 1, 0).finished()); }

Vec shifted(const Vec& v, double a) { return (v.array() + a).matrix(); }

}  // namespace

TEST_CASE("log-sum-exp and softmax do not overflow") {
  const Vec big = (Vec(3) << 1000.0, 1000.0, -1000.0).finished();
  CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
  const Vec w = softmax(big);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[2] == 0.0);
  CHECK(std::isfinite(log_sum_exp((Vec(2) << -1e6 / 1e-6, 0.0).finished())));
}

TEST_CASE("smoothed c-transform") {
  oracle::Rng rng(31);
  const CostMatrix c(rng.matrix(5, 7, -1, 1));
  const DiscreteMeasure mu(rng.simplex(5));
  const Vec psi = rng.vector(7, -1, 1);

  SUBCASE("shift equivariance") {
    for (double eta : {0.05, 1.0}) {
      const Vec a = smoothed_c_transform(shifted(psi, 2.5), mu, c, eta);
      const Vec b = shifted(smoothed_c_transform(psi, mu, c, eta), 2.5);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  SUBCASE("small eta approaches the c-transform") {
    const auto half = DiscreteMeasure::uniform(2);
    for (double eta : {1e-2, 1e-3, 1e-4}) {
      const Vec v = smoothed_c_transform(Vec::Zero(2), half, swap2(), eta);
      // Row minima are 0; the correction is eta log(mu) - eta log(1 + e^{-1/eta}).
      CHECK(v.cwiseAbs().maxCoeff() <= 2 * eta);
    }
  }

  SUBCASE("oscillation bound with log mu") {
    for (double eta : {0.1, 1.0, 10.0}) {
      const Vec v = smoothed_c_transform(psi, mu, c, eta);
      const Vec logmu = mu.weights().array().log().matrix();
      CHECK(osc_norm(v) <= eta * osc_norm(logmu) + c.oscillation() + 1e-12);
    }
  }

  SUBCASE("1-Lipschitz in the oscillation norm") {
    for (int trial = 0; trial < 50; ++trial) {
      const Vec p0 = rng.vector(7, -2, 2);
      const Vec p1 = rng.vector(7, -2, 2);
      const double eta = rng.uniform(0.01, 2.0);
      const double lhs =
          osc_norm(smoothed_c_transform(p0, mu, c, eta) - smoothed_c_transform(p1, mu, c, eta));
      CHECK(lhs <= osc_norm(p0 - p1) + 1e-12);
    }
  }

  SUBCASE("parameter errors") {
    CHECK_THROWS_AS(smoothed_c_transform(psi, mu, c, 0.0), ParameterError);
    CHECK_THROWS_AS(smoothed_c_transform(psi, mu, c, -1.0), ParameterError);
    const DiscreteMeasure holey((Vec(5) << 0.5, 0.5, 0, 0, 0).finished());
    CHECK_THROWS_AS(smoothed_c_transform(psi, holey, c, 1.0), ParameterError);
  }

  SUBCASE("extreme inputs stay finite") {
    const CostMatrix wide((Mat(2, 2) << 1e6, -1e6, 0, 1e6).finished());
    const Vec v = smoothed_c_transform(Vec::Zero(2), DiscreteMeasure::uniform(2), wide, 1e-6);
    CHECK(v.allFinite());
  }
}

TEST_CASE("smoothed cbar-transform") {
  oracle::Rng rng(32);
  const CostMatrix c(rng.matrix(6, 4, 0, 2));
  const DiscreteMeasure nu(rng.simplex(4));
  const Vec phi = rng.vector(6, -1, 1);

  const Vec a = smoothed_cbar_transform(shifted(phi, -1.25), nu, c, 0.3);
  const Vec b = shifted(smoothed_cbar_transform(phi, nu, c, 0.3), -1.25);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);

  // Zero cost: phi = eta log mu gives -eta log nu.
  const DiscreteMeasure mu(rng.simplex(6));
  const double eta = 0.7;
  const Vec v = smoothed_cbar_transform((eta * mu.weights().array().log()).matrix(), nu,
                                        CostMatrix(Mat::Zero(6, 4)), eta);
  const Vec expected = (-eta * nu.weights().array().log()).matrix();
  CHECK((v - expected).cwiseAbs().maxCoeff() <= 1e-14);

  for (int trial = 0; trial < 50; ++trial) {
    const Vec f0 = rng.vector(6, -2, 2);
    const Vec f1 = rng.vector(6, -2, 2);
    const double lhs =
        osc_norm(smoothed_cbar_transform(f0, nu, c, 0.5) - smoothed_cbar_transform(f1, nu, c, 0.5));
    CHECK(lhs <= osc_norm(f0 - f1) + 1e-12);
  }
}

TEST_CASE("Gibbs kernel perturbation bound") {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = rng.integer(2, 9);
    const double scale = rng.uniform(0.01, 3.0);
    const Vec u0 = rng.vector(n, -scale, scale);
    const Vec u1 = rng.vector(n, -scale, scale);
    const double lhs = (softmax(u1) - softmax(u0)).cwiseAbs().sum();
    CHECK(lhs <= 2 * (1 - std::exp(-2 * osc_norm(u0 - u1))) + 1e-14);
  }
}

TEST_CASE("Sinkhorn closed forms") {
  SUBCASE("zero cost gives the product plan") {
    const DiscreteMeasure mu((Vec(3) << 0.2, 0.3, 0.5).finished());
    const DiscreteMeasure nu((Vec(4) << 0.1, 0.4, 0.4, 0.1).finished());
    SinkhornConfig cfg;
    cfg.eta = 0.5;
    const SinkhornResult r = sinkhorn_solve(mu, nu, CostMatrix(Mat::Zero(3, 4)), cfg);
    CHECK(r.converged);
    const Mat prod = mu.weights() * nu.weights().transpose();
    CHECK((r.plan.entries - prod).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SUBCASE("symmetric 2x2") {
    const auto half = DiscreteMeasure::uniform(2);
    SinkhornConfig cfg;
    cfg.eta = 1.0;
    cfg.tol = 1e-14;
    const SinkhornResult r = sinkhorn_solve(half, half, swap2(), cfg);
    CHECK(r.converged);
    const double e = std::exp(-1.0);
    CHECK(std::abs(r.plan.entries(0, 0) - 0.5 / (1 + e)) <= 1e-12);
    CHECK(std::abs(r.plan.entries(1, 1) - 0.5 / (1 + e)) <= 1e-12);
    CHECK(std::abs(r.plan.entries(0, 1) - 0.5 * e / (1 + e)) <= 1e-12);
    CHECK(std::abs(r.plan.entries(1, 0) - 0.5 * e / (1 + e)) <= 1e-12);
  }
}

TEST_CASE("Sinkhorn map contracts in the oscillation norm") {
  oracle::Rng rng(34);
  for (double eta : {0.1, 1.0}) {
    const CostMatrix c(rng.matrix(10, 10, 0, 1));
    const DiscreteMeasure mu(rng.simplex(10));
    const DiscreteMeasure nu(rng.simplex(10));
    const double k = 1 - std::exp(-2 * c.oscillation() / eta);
    for (int trial = 0; trial < 30; ++trial) {
      const Vec p0 = rng.vector(10, -1, 1);
      const Vec p1 = rng.vector(10, -1, 1);
      const double lhs = osc_norm(sinkhorn_map(p0, mu, nu, c, eta) - sinkhorn_map(p1, mu, nu, c, eta));
      CHECK(lhs <= k * osc_norm(p0 - p1) + 1e-12);
    }
  }
}

TEST_CASE("Sinkhorn log properties") {
  oracle::Rng rng(35);
  const CostMatrix c(rng.matrix(6, 5, 0, 1));
  const DiscreteMeasure mu(rng.simplex(6));
  const DiscreteMeasure nu(rng.simplex(5));
  SinkhornConfig cfg;
  cfg.eta = 0.2;
  cfg.tol = 1e-13;
  const SinkhornResult r = sinkhorn_solve(mu, nu, c, cfg);
  REQUIRE(r.converged);
  const auto& it = r.log.iterations;
  for (std::size_t k = 1; k < it.size(); ++k) {
    CHECK(it[k].osc_update <= it[k - 1].osc_update + 1e-12);
    CHECK(it[k].dual_value >= it[k - 1].dual_value - 1e-12);
  }
  // Fixed point: smoothed cell masses match nu.
  const Vec g = smoothed_laguerre(r.psi, c, cfg.eta).transpose() * mu.weights();
  CHECK((g - nu.weights()).cwiseAbs().maxCoeff() <= 10 * cfg.tol + 1e-14);
  CHECK((r.plan.entries.array() > 0).all());
  const PlanReport rep = plan_diagnostics(r.plan, mu, nu, c);
  CHECK(rep.row_residual <= 1e-10);
  CHECK(rep.col_residual <= 1e-10);
}

TEST_CASE("Sinkhorn reports non-convergence") {
  oracle::Rng rng(36);
  SinkhornConfig cfg;
  cfg.eta = 0.01;
  cfg.max_iter = 3;
  const auto m = DiscreteMeasure::uniform(4);
  const SinkhornResult r = sinkhorn_solve(m, m, CostMatrix(rng.matrix(4, 4, 0, 1)), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.log.iterations.size() == 3);
  CHECK(r.plan.entries.allFinite());
}

TEST_CASE("eta scaling reaches the same plan") {
  oracle::Rng rng(37);
  const CostMatrix c(rng.matrix(5, 5, 0, 1));
  const auto m = DiscreteMeasure::uniform(5);
  SinkhornConfig cfg;
  cfg.eta = 0.05;
  const SinkhornResult direct = sinkhorn_solve(m, m, c, cfg);
  cfg.eta_scaling = true;
  const SinkhornResult scaled = sinkhorn_solve(m, m, c, cfg);
  REQUIRE(direct.converged);
  REQUIRE(scaled.converged);
  CHECK((direct.plan.entries - scaled.plan.entries).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(scaled.log.iterations.front().eta > cfg.eta);
}

TEST_CASE("plan cost approaches the assignment optimum from above") {
  oracle::Rng rng(38);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 6;
    const CostMatrix c(rng.matrix(n, n, 0, 1));
    const auto m = DiscreteMeasure::uniform(n);
    const double ap = oracle::exhaustive_assignment(c.values()).cost / n;
    double previous = 1e300;
    for (double eta : {1.0, 0.1, 0.01}) {
      SinkhornConfig cfg;
      cfg.eta = eta;
      // Small eta on near-degenerate costs converges slowly; the cost trend
      // does not need a tight tolerance.
      cfg.tol = 1e-7;
      const SinkhornResult r = sinkhorn_solve(m, m, c, cfg);
      REQUIRE(r.converged);
      const double cost = plan_diagnostics(r.plan, m, m, c).cost;
      CHECK(cost >= ap - 1e-9);
      CHECK(cost <= previous + 1e-12);
      previous = cost;
    }
  }
}

TEST_CASE("regularized Kantorovich calculus") {
  oracle::Rng rng(39);
  const CostMatrix c(rng.matrix(5, 7, 0, 1));
  const DiscreteMeasure mu(rng.simplex(5));
  const DiscreteMeasure nu(rng.simplex(7));
  const Vec psi = rng.vector(7, -0.5, 0.5);
  const double eta = 1.0;
  const RegularizedKantorovich k = reg_kant(psi, mu, nu, c, eta);

  CHECK(std::abs(k.gradient.sum()) <= 1e-14);

  const Vec fd = oracle::finite_diff_gradient(
      [&](const Vec& p) { return reg_kant_value(p, mu, nu, c, eta); }, psi, 1e-5);
  CHECK((fd - k.gradient).norm() / k.gradient.norm() <= 1e-6);

  CHECK((k.hessian - k.hessian.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((k.hessian * Vec::Ones(7)).cwiseAbs().maxCoeff() <= 1e-14);
  const Eigen::SelfAdjointEigenSolver<Mat> es(-k.hessian);
  CHECK(es.eigenvalues().minCoeff() >= -1e-14);
  // Rank N - 1: the second smallest eigenvalue is strictly positive.
  CHECK(es.eigenvalues()[1] > 1e-8);

  // Hessian against differences of the gradient.
  for (Eigen::Index z = 0; z < 7; ++z) {
    Vec p = psi;
    p[z] += 1e-5;
    const Vec gp = reg_kant(p, mu, nu, c, eta).gradient;
    p[z] = psi[z] - 1e-5;
    const Vec gm = reg_kant(p, mu, nu, c, eta).gradient;
    CHECK(((gp - gm) / 2e-5 - k.hessian.col(z)).cwiseAbs().maxCoeff() <= 1e-7);
  }

  // Includes eta H(mu): at c = 0, psi = 0 the value is eta sum mu log mu - eta log |Y|.
  const double h = (mu.weights().array() * mu.weights().array().log()).sum();
  CHECK(reg_kant_value(Vec::Zero(7), mu, nu, CostMatrix(Mat::Zero(5, 7)), 0.3) ==
        doctest::Approx(0.3 * h - 0.3 * std::log(7.0)).epsilon(1e-13));
}
