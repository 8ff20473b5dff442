/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <benchmark/benchmark.h>

#include "memchan/memchan.hpp"

using namespace memchan;

namespace {

Cmat random_hermitian(Eigen::Index d, Rng& rng) {
  const Cmat g = random_gaussian_matrix(d, d, rng);
  return (g + Cmat(g.adjoint())) / 2.0;
}

}  // namespace

static void BM_Tensor(benchmark::State& state) {
  Rng rng(1);
  const Eigen::Index d = state.range(0);
  const Cmat a = random_gaussian_matrix(d, d, rng);
  const Cmat b = random_gaussian_matrix(d, d, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor(a, b));
  }
}
BENCHMARK(BM_Tensor)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_PartialTrace(benchmark::State& state) {
  Rng rng(2);
  const Eigen::Index d = state.range(0);
  const Cmat m = random_hermitian(d * d, rng);
  const ProductSpace space(d, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(m, space, Factor::system));
  }
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

static void BM_Eigh(benchmark::State& state) {
  Rng rng(3);
  const Cmat m = random_hermitian(state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigh(m));
  }
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(16)->Arg(64);

static void BM_VonNeumannEntropy(benchmark::State& state) {
  Rng rng(4);
  const DensityOperator rho = random_density(state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(von_neumann_entropy(rho));
  }
}
BENCHMARK(BM_VonNeumannEntropy)->Arg(2)->Arg(8)->Arg(32);

static void BM_UseOnce(benchmark::State& state) {
  Rng rng(5);
  const Eigen::Index dm = state.range(0);
  const MemoryDevice dev(random_unitary(dm * 2, rng), ProductSpace(dm, 2),
                         random_density(dm, rng));
  const DensityOperator rho = random_density(2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(use_once(dev, rho));
  }
}
BENCHMARK(BM_UseOnce)->Arg(2)->Arg(4)->Arg(16);

static void BM_InducedChannel(benchmark::State& state) {
  Rng rng(6);
  const Eigen::Index dm = state.range(0);
  const MemoryDevice dev(random_unitary(dm * 2, rng), ProductSpace(dm, 2),
                         random_density(dm, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_channel(dev));
  }
}
BENCHMARK(BM_InducedChannel)->Arg(2)->Arg(4)->Arg(8);

static void BM_ChoiDistance(benchmark::State& state) {
  Rng rng(7);
  const KrausChannel a = amplitude_damping(0.3);
  const KrausChannel b = depolarizing(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(choi_distance(a, b));
  }
}
BENCHMARK(BM_ChoiDistance);

static void BM_SwapTomographySequential(benchmark::State& state) {
  Cvec ground(2);
  ground << 1.0, 0.0;
  const MemoryDevice dev = swap_device(DensityOperator::pure(ground));
  const ProbeStrategy strategy{ProbeStrategy::Kind::sequential,
                               static_cast<int>(state.range(0)), 0xC0FFEE};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_tomography(dev, strategy, TomographyMode::exact));
  }
}
BENCHMARK(BM_SwapTomographySequential)->Arg(10)->Arg(100);

static void BM_RepeatabilityBoundQubit(benchmark::State& state) {
  const KrausChannel ch = amplitude_damping(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(repeatability_bound(ch, 2));
  }
}
BENCHMARK(BM_RepeatabilityBoundQubit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
