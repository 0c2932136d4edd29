// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "cornerem/cgo.hpp"
#include "cornerem/cone_integrals.hpp"
#include "cornerem/corner.hpp"
#include "cornerem/radiation.hpp"
#include "cornerem/sampling.hpp"

namespace {

using namespace cornerem;

PolyhedralCone bench_cone(std::size_t n) {
  Rng rng(7);
  return random_cone(rng, n, 0.8);
}

void BM_ExponentialIntegral(benchmark::State& state) {
  const PolyhedralCone cone = bench_cone(static_cast<std::size_t>(state.range(0)));
  const CgoParameters p = build_cgo(cone, 0, 1.0, 50.0, 0.5 * s_upper_bound(cone, 0));
  for (auto _ : state) benchmark::DoNotOptimize(exponential_integral(cone, p.rho));
}
BENCHMARK(BM_ExponentialIntegral)->Arg(3)->Arg(6)->Arg(12);

void BM_CgoConstruction(benchmark::State& state) {
  const PolyhedralCone cone = bench_cone(6);
  const double s = 0.5 * s_upper_bound(cone, 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_cgo(cone, 0, 1.0, 50.0, s));
}
BENCHMARK(BM_CgoConstruction);

void BM_TruncatedIntegral(benchmark::State& state) {
  const PolyhedralCone cone = bench_cone(static_cast<std::size_t>(state.range(0)));
  const CgoParameters p =
      build_cgo(cone, 0, 1.0, 30.0, 0.5 * s_limit(cone, 0, SRange::admissible), SRange::admissible);
  const TruncatedCone tc(cone, recommended_radius(cone, p, p.tau));
  QuadratureOptions q;
  q.rtol = 1e-10;
  for (auto _ : state) benchmark::DoNotOptimize(truncated_integral(tc, PureExponential{p.rho}, q));
}
BENCHMARK(BM_TruncatedIntegral)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_FarFieldCube(benchmark::State& state) {
  const Medium md;
  const SphereGrid grid = sphere_grid();
  const auto src = CurrentSource::constant(ConvexPolyhedron::cube({0, 0, 0}, 2.0), {}, {0, 0, 1});
  const RadiationEvaluator ev(src, md);
  for (auto _ : state) benchmark::DoNotOptimize(ev.far_field(grid));
  state.counters["nodes"] = static_cast<double>(grid.size());
  state.counters["sources"] = static_cast<double>(ev.size());
}
BENCHMARK(BM_FarFieldCube)->Unit(benchmark::kMillisecond);

void BM_NearField(benchmark::State& state) {
  const Medium md;
  const auto src = CurrentSource::constant(Ball{{0, 0, 0}, 1.0}, {}, {0, 0, 1});
  const RadiationEvaluator ev(src, md);
  for (auto _ : state) benchmark::DoNotOptimize(ev.near_field({3.0, 1.0, -2.0}));
}
BENCHMARK(BM_NearField)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
