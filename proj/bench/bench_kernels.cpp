// Serial reference vs OpenMP paths for the kernels that fan out over
// independent indices. Each benchmark takes the execution mode as its second
// argument (0 = serial, 1 = parallel).

#include <benchmark/benchmark.h>

#include <random>

#include "bcm/bc_ops.hpp"
#include "bcm/inversion.hpp"
#include "bcm/roundtrip.hpp"
#include "bcm/spectral.hpp"

namespace {

using namespace bcm;

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

Potential random_potential(int n, double amplitude) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  Sequence b(static_cast<std::size_t>(n));
  for (double& x : b) x = u(gen);
  return Potential(std::move(b));
}

void BM_ConnectingViaWaves(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const Potential b = random_potential(T, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(connecting_via_waves(b, TimeHorizon(T), mode(state)));
  }
}

void BM_Factorization(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ResponseKernel r = response_kernel(random_potential(T, 0.1), 2 * T - 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(factor_rotated_connecting(r, TimeHorizon(T), {}, mode(state)));
  }
}

void BM_Characterize(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ResponseKernel r = response_kernel(random_potential(T, 0.1), 2 * T - 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(characterize_response(r, TimeHorizon(T), {}, mode(state)));
  }
}

void BM_KreinTrace(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const ResponseKernel r = response_kernel(random_potential(T, 0.1), 2 * T - 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(krein_trace(r, TimeHorizon(T), {}, mode(state)));
  }
}

void BM_EigenDecompose(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Hamiltonian h = build_hamiltonian(random_potential(N, 2.0), N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigen_decompose(h, {}, mode(state)));
  }
}

void BM_RoundTrip(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_roundtrip(1, 200, static_cast<int>(state.range(0)), 0.5, {}, mode(state)));
  }
}

}  // namespace

BENCHMARK(BM_ConnectingViaWaves)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Factorization)->ArgsProduct({{32, 96}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Characterize)->ArgsProduct({{32, 96}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KreinTrace)->ArgsProduct({{32, 96}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EigenDecompose)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RoundTrip)->ArgsProduct({{16}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
