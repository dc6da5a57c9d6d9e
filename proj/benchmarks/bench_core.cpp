// Copyright 2026 The pathspin Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pathspin/analysis.hpp"

using namespace pathspin;

namespace {

ProtocolConfig bench_config() {
  ProtocolConfig cfg;
  cfg.alpha = 0.6;
  cfg.gamma = 0.8;
  cfg.seed = 42;
  return cfg;
}

void GateApplication(benchmark::State& state) {
  const StateVector s = prepared_state(bench_config());
  const Gate g = bs_5050();
  for (auto _ : state) {
    StateVector out = apply_gate(s, kP1Path, g);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(GateApplication);

void TwoQubitGate(benchmark::State& state) {
  const StateVector s = prepared_state(bench_config());
  const Gate g = cnot();
  for (auto _ : state) {
    StateVector out = apply_gate(s, kP1Spin, kP3Spin, g);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(TwoQubitGate);

void Preparation(benchmark::State& state) {
  const ProtocolConfig cfg = bench_config();
  for (auto _ : state) {
    StateVector out = prepared_state(cfg);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(Preparation);

void BranchEnumeration(benchmark::State& state) {
  const ProtocolConfig cfg = bench_config();
  for (auto _ : state) {
    auto branches = enumerate_branches(cfg);
    benchmark::DoNotOptimize(branches);
  }
}
BENCHMARK(BranchEnumeration);

void SampledRuns(benchmark::State& state) {
  const ProtocolConfig cfg = bench_config();
  for (auto _ : state) {
    auto records = run_sampled(cfg, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(records);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SampledRuns)->Arg(100)->Arg(1000);

void ReducedDensity(benchmark::State& state) {
  const StateVector s = prepared_state(bench_config());
  for (auto _ : state) {
    DensityMatrix rho = reduced_density(s, {kP1Path, kP1Spin});
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(ReducedDensity);

void CrossValidation(benchmark::State& state) {
  const ProtocolConfig cfg = bench_config();
  for (auto _ : state) {
    FidelityReport report = cross_validate(cfg);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(CrossValidation);

}  // namespace

BENCHMARK_MAIN();
