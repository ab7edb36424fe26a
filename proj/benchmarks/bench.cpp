#include <benchmark/benchmark.h>

#include "nlsplane/diagonal.hpp"
#include "nlsplane/experiments.hpp"
#include "nlsplane/integrator.hpp"
#include "nlsplane/resonance.hpp"
#include "nlsplane/spectral.hpp"
#include "nlsplane/taylor.hpp"

using namespace nlsplane;

namespace {

FourierField perturbed_plane_wave(int d, int K) {
  ExperimentConfig cfg;
  cfg.d = d;
  cfg.K = K;
  cfg.s = 2.0;
  cfg.eps = 0.1;
  return initial_data(cfg);
}

void BM_StrangStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int K = static_cast<int>(state.range(1));
  FourierField u = perturbed_plane_wave(d, K);
  StrangStepper stepper(u.grid(), 1e-3, 1.0);
  for (auto _ : state) {
    stepper.step(u);
    benchmark::DoNotOptimize(u.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StrangStep)->Args({1, 64})->Args({2, 16})->Args({2, 32})->Args({3, 8});

void BM_CubicTerm(benchmark::State& state) {
  const FourierField u = perturbed_plane_wave(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cubic_term(u, 1.0));
}
BENCHMARK(BM_CubicTerm)->Arg(8)->Arg(16)->Arg(32);

void BM_NormalCoordinates(benchmark::State& state) {
  const FourierField w = random_perturbation(GridSpec(2, 16), 2.0, 0.1, 3);
  const DiagonalFrame frame(1.0, 1.0, w.grid().max_shell());
  for (auto _ : state) benchmark::DoNotOptimize(to_normal_coords(w, frame));
}
BENCHMARK(BM_NormalCoordinates);

void BM_Certify(benchmark::State& state) {
  const ScanBox box{1.0, 1.0, static_cast<int>(state.range(0)),
                    static_cast<int>(state.range(1)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(certify(box, 2.0));
}
BENCHMARK(BM_Certify)->Args({3, 20})->Args({4, 20})->Unit(benchmark::kMillisecond);

void BM_TaylorBound(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_coefficient_bound(2, 2, 3, 5, 1.0, 1.0));
}
BENCHMARK(BM_TaylorBound)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
