#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"

TEST_CASE("exhaustive assignment") {
  oracle::Assignment a = oracle::exhaustive_assignment(Eigen::MatrixXd::Zero(4, 4));
  CHECK(a.cost == 0.0);
  CHECK(a.sigma == std::vector<int>{0, 1, 2, 3});

  a = oracle::exhaustive_assignment((Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());
  CHECK(a.cost == 0.0);
  CHECK(a.sigma == std::vector<int>{0, 1});

  a = oracle::exhaustive_assignment((Eigen::MatrixXd(3, 3) << 5, 1, 9, 2, 8, 9, 9, 9, 1).finished());
  CHECK(a.cost == 4.0);
  CHECK(a.sigma == std::vector<int>{1, 0, 2});

  CHECK_THROWS_AS(oracle::exhaustive_assignment(Eigen::MatrixXd::Zero(10, 10)), std::invalid_argument);
}

TEST_CASE("finite differences") {
  const Eigen::VectorXd a = (Eigen::VectorXd(3) << 1, -2, 0.5).finished();
  auto linear = [&](const Eigen::VectorXd& p) { return a.dot(p) + 3; };
  for (double h : {1e-1, 1e-4}) {
    const Eigen::VectorXd g = oracle::finite_diff_gradient(linear, Eigen::VectorXd::Ones(3), h);
    CHECK((g - a).cwiseAbs().maxCoeff() <= 1e-9);
  }
  auto abs0 = [](const Eigen::VectorXd& p) { return std::abs(p[0]); };
  const Eigen::VectorXd e0 = Eigen::VectorXd::Unit(1, 0);
  CHECK(oracle::one_sided_derivative(abs0, Eigen::VectorXd::Zero(1), e0, 1e-3) == doctest::Approx(1.0));
  CHECK(oracle::one_sided_derivative(abs0, Eigen::VectorXd::Zero(1), e0, -1e-3) == doctest::Approx(-1.0));
}

TEST_CASE("Gauss-Legendre") {
  CHECK(oracle::gauss_legendre([](double x) { return std::pow(x, 9); }, 0, 1, 1e-14) ==
        doctest::Approx(0.1).epsilon(1e-14));
  CHECK(oracle::gauss_legendre([](double x) { return std::abs(x - 0.3); }, 0, 1, 1e-12) ==
        doctest::Approx(0.29).epsilon(1e-11));
}

TEST_CASE("sampled masses and grid scans") {
  const std::vector<oracle::Pt> sites{oracle::Pt(0.25, 0.5), oracle::Pt(0.75, 0.5)};
  const Eigen::VectorXd m = oracle::sampled_cell_masses(
      sites, Eigen::VectorXd::Zero(2), [](const oracle::Pt&) { return 1.0; }, oracle::Pt(0, 0),
      oracle::Pt(1, 1), 100);
  CHECK(m[0] == doctest::Approx(0.5));
  const auto scan = oracle::grid_scan_mass(0, Eigen::VectorXd::Zero(1), 0, 1, 3,
                                           [](const Eigen::VectorXd& p) { return -p[0]; });
  CHECK(scan == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_THROWS_AS(oracle::grid_scan_mass(0, Eigen::VectorXd::Zero(1), 0, 1, 1,
                                         [](const Eigen::VectorXd&) { return 0.0; }),
                  std::invalid_argument);
}
