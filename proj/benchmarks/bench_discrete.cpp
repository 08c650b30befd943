#include <benchmark/benchmark.h>

#include "common.hpp"
#include "ot/auction.hpp"
#include "ot/sinkhorn.hpp"

namespace {

void BM_Auction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ot::CostMatrix c(bench::random_matrix(n, n, 1));
  for (auto _ : state) benchmark::DoNotOptimize(ot::auction(c, 1e-2));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Auction)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_AuctionScaled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ot::CostMatrix c(bench::random_matrix(n, n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ot::auction_scaled(c, 1e-4));
  state.SetComplexityN(n);
}
BENCHMARK(BM_AuctionScaled)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SinkhornSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ot::CostMatrix c(bench::random_matrix(n, n, 3));
  const ot::DiscreteMeasure mu(bench::random_simplex(n, 4));
  const ot::DiscreteMeasure nu(bench::random_simplex(n, 5));
  ot::Vec psi = ot::Vec::Zero(n);
  for (auto _ : state) {
    psi = ot::sinkhorn_map(psi, mu, nu, c, 0.1);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SinkhornSweep)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_SinkhornSolve(benchmark::State& state) {
  const ot::CostMatrix c(bench::random_matrix(100, 100, 6));
  const ot::DiscreteMeasure mu(bench::random_simplex(100, 7));
  const ot::DiscreteMeasure nu(bench::random_simplex(100, 8));
  ot::SinkhornConfig cfg;
  cfg.eta = static_cast<double>(state.range(0)) / 100.0;
  cfg.tol = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(ot::sinkhorn_solve(mu, nu, c, cfg));
}
BENCHMARK(BM_SinkhornSolve)->Arg(100)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
