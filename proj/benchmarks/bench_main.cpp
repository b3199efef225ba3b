#include <benchmark/benchmark.h>

#include "gammalab/correlation.hpp"
#include "gammalab/gamma.hpp"
#include "gammalab/opnorm.hpp"
#include "gammalab/spaces.hpp"

using namespace gammalab;

namespace {

HermitianMatrix triangle3() {
  HermitianMatrix a(3, Field::real);
  for (int i = 0; i < 3; ++i) {
    a.set(i, i, 1.0);
    for (int j = i + 1; j < 3; ++j) a.set(i, j, -0.5);
  }
  return a;
}

void BM_PqGauge(benchmark::State& state) {
  const SpaceSpec space = SpaceSpec::pq(1.5, 8, Field::real);
  const Vec v{Cplx(0.3), Cplx(0.9)};
  for (auto _ : state) benchmark::DoNotOptimize(gauge(space, v));
}
BENCHMARK(BM_PqGauge);

void BM_PqDualGauge(benchmark::State& state) {
  const SpaceSpec space = SpaceSpec::pq(1.5, 8, Field::real);
  const Vec v{Cplx(0.3), Cplx(0.9)};
  for (auto _ : state) benchmark::DoNotOptimize(dual_gauge(space, v));
}
BENCHMARK(BM_PqDualGauge);

void BM_Eigh(benchmark::State& state) {
  SeededRng rng(1);
  const auto a = random_psd(static_cast<int>(state.range(0)), Field::complex, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(a));
}
BENCHMARK(BM_Eigh)->Arg(3)->Arg(8);

void BM_QuadFormSup(benchmark::State& state) {
  SeededRng rng(2);
  const auto a = random_psd(2, Field::complex, rng);
  const SpaceSpec space = SpaceSpec::pq(3, 4, Field::complex);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quad_form_sup(a, space, NormSide::primal_to_dual));
  }
}
BENCHMARK(BM_QuadFormSup);

void BM_DirectionNormSupAbs(benchmark::State& state) {
  const detail::DirectionNorm dn(SpaceSpec::pq(3, 4, Field::real),
                                 NormSide::primal_to_dual);
  for (auto _ : state) benchmark::DoNotOptimize(dn.sup_abs(1.0, 0.7, 0.5));
}
BENCHMARK(BM_DirectionNormSupAbs);

void BM_SignEnumeration(benchmark::State& state) {
  SeededRng rng(3);
  const auto a = random_psd(8, Field::real, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linf_to_l1_norm(a, Field::real));
  }
}
BENCHMARK(BM_SignEnumeration);

void BM_PhaseAscent(benchmark::State& state) {
  SeededRng rng(4);
  const auto a = random_psd(3, Field::complex, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linf_to_l1_norm(a, Field::complex));
  }
}
BENCHMARK(BM_PhaseAscent);

void BM_Beta3(benchmark::State& state) {
  const auto tri = triangle3();
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 300;
  for (auto _ : state) benchmark::DoNotOptimize(beta(tri, cfg).value);
}
BENCHMARK(BM_Beta3);

void BM_GammaEuclid(benchmark::State& state) {
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.max_iters = 200;
  const SpaceSpec space = SpaceSpec::pq(2, 2, Field::real);
  for (auto _ : state) benchmark::DoNotOptimize(gamma(space, cfg).value);
}
BENCHMARK(BM_GammaEuclid);

}  // namespace

BENCHMARK_MAIN();
