#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ot/types.hpp"

namespace bench {

inline ot::Mat random_matrix(int r, int c, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ot::Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = u(gen);
  return m;
}

inline ot::Vec random_simplex(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  ot::Vec w(n);
  for (int i = 0; i < n; ++i) w[i] = u(gen);
  return w / w.sum();
}

// Jittered grid in the unit square, so sites stay well separated.
inline std::vector<ot::Point> jittered_sites(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double h = 1.0 / side;
  std::vector<ot::Point> pts;
  for (int k = 0; k < n; ++k) {
    const int i = k % side;
    const int j = k / side;
    pts.emplace_back((i + 0.5 + u(gen)) * h, (j + 0.5 + u(gen)) * h);
  }
  return pts;
}

}  // namespace bench
