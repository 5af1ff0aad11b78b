// Copyright 2026 The MPSS Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against their serial references on the FYP-shaped fixture.
// Run with --benchmark_filter=... to pick one; /0 uses all cores.

#include <filesystem>
#include <random>
#include <variant>

#include <benchmark/benchmark.h>

#include "mpss/data_io.h"
#include "mpss/engine.h"

namespace mpss {
namespace {

const SharedInputDataset& Fyp() {
  static const SharedInputDataset ds = std::get<SharedInputDataset>(LoadDataset(
      std::filesystem::path(MPSS_DATA_DIR) / "fyp_synthetic.csv",
      std::filesystem::path(MPSS_DATA_DIR) / "fyp_synthetic.cfg"));
  return ds;
}

// Parallel view of the fixture: inputs split evenly between the sectors.
const ParallelDataset& FypParallel() {
  static const ParallelDataset ds = [] {
    const SharedInputDataset& s = Fyp();
    ParallelDataset p;
    p.dmu_ids = s.dmu_ids;
    p.subsystem_names = s.subsystem_names;
    p.input_names = s.input_names;
    p.output_names = s.output_names[0];
    p.inputs = {0.5 * s.inputs, 0.5 * s.inputs};
    p.outputs = s.outputs;
    return p;
  }();
  return ds;
}

StructureMode ModeArg(const benchmark::State& state) {
  return state.range(0) == 0 ? StructureMode::kDecoupled : StructureMode::kJoint;
}

void BM_Sweep(benchmark::State& state) {
  EngineOptions options;
  options.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Sweep(Fyp(), 0.1, OmegaWeights::Uniform(2),
                                   ModeArg(state), AlphaMode::kUniform, options));
  }
}
BENCHMARK(BM_Sweep)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(SweepSerial(Fyp(), 0.1, OmegaWeights::Uniform(2),
                                         ModeArg(state), AlphaMode::kUniform));
  }
}
BENCHMARK(BM_SweepSerial)->Args({0})->Args({1})->Unit(benchmark::kMillisecond);

void BM_EvaluateAll(benchmark::State& state) {
  EngineOptions options;
  options.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EvaluateAll(FypParallel(), OmegaWeights::Uniform(2), ModeArg(state), options));
  }
}
BENCHMARK(BM_EvaluateAll)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

void BM_EvaluateAllSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EvaluateAllSerial(FypParallel(), OmegaWeights::Uniform(2), ModeArg(state)));
  }
}
BENCHMARK(BM_EvaluateAllSerial)->Args({0})->Args({1})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mpss

BENCHMARK_MAIN();
