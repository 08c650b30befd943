#include <benchmark/benchmark.h>

#include "common.hpp"
#include "ot/laguerre.hpp"
#include "ot/sd_entropic.hpp"
#include "ot/semidiscrete.hpp"

namespace {

void BM_BuildDiagram(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ot::SiteSet sites(bench::jittered_sites(n, 11));
  const auto rho = ot::PolygonalDensity::unit_square();
  const ot::Vec psi = ot::Vec::Zero(n);
  for (auto _ : state) benchmark::DoNotOptimize(ot::build_diagram(sites, psi, rho));
  state.SetComplexityN(n);
}
BENCHMARK(BM_BuildDiagram)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_MassesAndHessian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ot::SiteSet sites(bench::jittered_sites(n, 12));
  const auto rho = ot::PolygonalDensity::box_grid(ot::Point(0, 0), ot::Point(1, 1), 8,
                                                  [](const ot::Point& x) { return 1.0 + x.x(); });
  const ot::LaguerreDiagram d = ot::build_diagram(sites, ot::Vec::Zero(n), rho);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ot::cell_masses(d, rho));
    benchmark::DoNotOptimize(ot::edge_integrals(d, rho));
  }
}
BENCHMARK(BM_MassesAndHessian)->Arg(64)->Arg(256);

void BM_DampedNewton(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ot::SiteSet sites(bench::jittered_sites(n, 13));
  const auto rho = ot::PolygonalDensity::unit_square();
  const ot::Vec nu = bench::random_simplex(n, 14);
  for (auto _ : state)
    benchmark::DoNotOptimize(ot::damped_newton(sites, rho, nu, ot::Vec::Zero(n), {}));
}
BENCHMARK(BM_DampedNewton)->Arg(20)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_OlikerPrussner(benchmark::State& state) {
  const ot::SiteSet sites(bench::jittered_sites(10, 15));
  const auto rho = ot::PolygonalDensity::unit_square();
  ot::OPConfig cfg;
  cfg.delta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ot::oliker_prussner(sites, rho, ot::Vec::Constant(10, 0.1), cfg));
}
BENCHMARK(BM_OlikerPrussner)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GEta(benchmark::State& state) {
  const ot::SiteSet sites(bench::jittered_sites(16, 16));
  const auto rho = ot::PolygonalDensity::unit_square();
  const ot::QuadratureRule q(rho, static_cast<int>(state.range(0)));
  const ot::Vec psi = ot::Vec::Zero(16);
  for (auto _ : state) benchmark::DoNotOptimize(ot::dg_eta(sites, psi, 0.05, q));
  state.counters["nodes"] = static_cast<double>(q.size());
}
BENCHMARK(BM_GEta)->DenseRange(2, 5);

}  // namespace
