#include <benchmark/benchmark.h>

#include "weylaw/density.hpp"
#include "weylaw/dominance.hpp"
#include "weylaw/levi.hpp"
#include "weylaw/spherical.hpp"

using namespace weylaw;

static void BM_BuildRootSystem(benchmark::State& state) {
  const auto f = static_cast<Family>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(RootSystem::build(f, r));
}
BENCHMARK(BM_BuildRootSystem)->Args({0, 5})->Args({1, 4})->Args({5, 4})->Args({4, 8})->Unit(benchmark::kMicrosecond);

static void BM_HyperplaneLevis(benchmark::State& state) {
  const auto rs = RootSystem::build(static_cast<Family>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperplane_maximal_levis(rs));
}
BENCHMARK(BM_HyperplaneLevis)->Args({6, 2})->Args({1, 3})->Args({5, 4})->Unit(benchmark::kMillisecond);

static void BM_DTilde(benchmark::State& state) {
  const auto rs = RootSystem::build(Family::D, 5);
  const auto lam = SpectralParam::imaginary(rs.dominant_translate(random_dominant(rs, 1, 0)));
  DTildeOptions opts;
  opts.path = state.range(0) ? DTildePath::Exhaustive : DTildePath::ClassicalFast;
  for (auto _ : state) benchmark::DoNotOptimize(d_tilde(rs, lam, opts));
}
BENCHMARK(BM_DTilde)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_MinimalFamily(benchmark::State& state) {
  const auto rs = RootSystem::build(Family::B, 4);
  for (auto _ : state) benchmark::DoNotOptimize(verify_minimal_family(rs, 50, 1));
}
BENCHMARK(BM_MinimalFamily)->Unit(benchmark::kMillisecond);

static void BM_WeylLawMonteCarlo(benchmark::State& state) {
  const auto ctx = DensityContext::make(RootSystem::build(Family::B, 3));
  DomainSpec ball{DomainShape::Ball, {}, 1.0, {}};
  Sampler s;
  s.method = Sampler::Method::MonteCarlo;
  s.samples = 100'000;
  s.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_law_main_term(ctx, ball, 20.0, s));
}
BENCHMARK(BM_WeylLawMonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SphericalSL2(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  const ComplexVector lam{{0.0, nu / 2}, {0.0, -nu / 2}};
  const auto X = CartanCoordinate::from({0.5, -0.5});
  for (auto _ : state) benchmark::DoNotOptimize(spherical_function(2, lam, X));
}
BENCHMARK(BM_SphericalSL2)->Arg(1)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_SphericalSL3(benchmark::State& state) {
  const ComplexVector lam{{0.0, 1.0}, {0.0, 0.2}, {0.0, -1.2}};
  const auto X = CartanCoordinate::from({0.3, 0.05, -0.35});
  for (auto _ : state) benchmark::DoNotOptimize(spherical_function(3, lam, X));
}
BENCHMARK(BM_SphericalSL3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
