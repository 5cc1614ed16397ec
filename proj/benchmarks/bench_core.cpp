#include <benchmark/benchmark.h>

#include "polyapprox/constants.hpp"
#include "polyapprox/deviations.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/optimize.hpp"
#include "polyapprox/random.hpp"

using namespace polyapprox;

namespace {

Points sphere_points(int n, int m, std::uint64_t seed) {
  Points pts;
  for (int i = 0; i < m; ++i) pts.push_back(sample_sphere(n, seed, static_cast<std::uint64_t>(i)));
  return pts;
}

void BM_ConvexHull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Points pts = sphere_points(n, static_cast<int>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(pts));
}
BENCHMARK(BM_ConvexHull)->Args({2, 1000})->Args({3, 200})->Args({4, 60})->Unit(benchmark::kMillisecond);

void BM_ExactIntrinsicVolumes(benchmark::State& state) {
  const Polytope p = convex_hull(sphere_points(3, static_cast<int>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(intrinsic_volumes_exact(p));
}
BENCHMARK(BM_ExactIntrinsicVolumes)->Arg(50)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_DeltaExact(benchmark::State& state) {
  const BodyPtr d3 = make_ball(3);
  const BodyPtr p = make_polytope_body(convex_hull(sphere_points(3, 200, 3)));
  for (auto _ : state) benchmark::DoNotOptimize(delta_j(d3, p, 2));
}
BENCHMARK(BM_DeltaExact)->Unit(benchmark::kMicrosecond);

void BM_L1MetricMonteCarlo(benchmark::State& state) {
  const BodyPtr e = make_ellipsoid(Vec::LinSpaced(3, 0.6, 1.4));
  const BodyPtr p = make_polytope_body(make_cube(3, -0.8, 0.8));
  for (auto _ : state) benchmark::DoNotOptimize(l1_metric(*e, *p, static_cast<std::uint64_t>(state.range(0)), 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_L1MetricMonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_RandomInscribed(benchmark::State& state) {
  const BoundaryDensity d(make_ball(3), DensityKind::Uniform);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_inscribed(d, static_cast<int>(state.range(0)), ++seed));
}
BENCHMARK(BM_RandomInscribed)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_InequalitySuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(appendix_b_suite(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_InequalitySuite)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_OptimizeHexagon(benchmark::State& state) {
  const BodyPtr d2 = make_ball(2);
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.steps = 500;
  for (auto _ : state) benchmark::DoNotOptimize(best_inscribed(d2, 6, delta_objective(d2, 2), cfg));
}
BENCHMARK(BM_OptimizeHexagon)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
