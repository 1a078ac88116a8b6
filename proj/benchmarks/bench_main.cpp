// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "eigenmoduli/moduli.hpp"
#include "eigenmoduli/scan.hpp"

namespace {

using namespace emod;

// Bose, m = 2; the argument is q, with n = 6.
void BM_BuildProjectors(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ProjectorSet p = build_projectors(q, 6, 2, Statistics::Bose);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_BuildProjectors)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_JacobianCokernel(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const ProjectorSet p = build_projectors(q, n, 2, Statistics::Bose);
  const ComplexVector psi = random_state(p.dim(), 1);
  for (auto _ : state) {
    CokernelReport rep = cokernel(build_jacobian(psi, p));
    benchmark::DoNotOptimize(rep);
  }
  state.counters["rows"] = p.dim_m() * p.dim_m();
  state.counters["cols"] = 2 * p.dim();
}
BENCHMARK(BM_JacobianCokernel)->Args({2, 6})->Args({3, 6})->Args({3, 8})->Unit(benchmark::kMillisecond);

void BM_ScanTrial(benchmark::State& state) {
  ScanConfig c;
  c.q = static_cast<int>(state.range(0));
  c.n = static_cast<int>(state.range(1));
  c.m = 2;
  c.trials = 1;
  c.controls = 0;
  c.seed = 3;
  for (auto _ : state) {
    ScanReport r = eigenstate_scan(c);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ScanTrial)->Args({2, 6})->Args({3, 6})->Unit(benchmark::kMillisecond);

void BM_SampleMinors(benchmark::State& state) {
  const ProjectorSet p = build_projectors(2, 6, 2, Statistics::Bose);
  const ComplexMatrix jac = build_jacobian(random_state(p.dim(), 2), p).matrix;
  for (auto _ : state) {
    MinorSampleReport r = sample_minors(jac, 100, 4);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SampleMinors)->Unit(benchmark::kMicrosecond);

}  // namespace

// The distro libbenchmark_main.a carries LTO bytecode tied to another compiler build.
BENCHMARK_MAIN();
