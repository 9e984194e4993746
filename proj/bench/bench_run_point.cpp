/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 hris contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "hris/channel.hpp"
#include "hris/optimize.hpp"
#include "hris/sim.hpp"
#include "hris/units.hpp"

using namespace hris;

namespace {

SceneConfig bench_scene(int n)
{
  SceneConfig scene;
  scene.num_ris_elements = n;
  return scene;
}

void run_point_bench(benchmark::State& state, SimMode mode, Execution exec)
{
  const SceneConfig scene = bench_scene(static_cast<int>(state.range(0)));
  const OptimizerOptions opts;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_point(scene, mode, 50.0, 8, 1, opts, {}, {}, exec));
  state.SetItemsProcessed(state.iterations() * 8);
}

void BM_PassiveSerial(benchmark::State& s) { run_point_bench(s, SimMode::Passive, Execution::Serial); }
void BM_PassiveParallel(benchmark::State& s) { run_point_bench(s, SimMode::Passive, Execution::Parallel); }
void BM_ActiveSerial(benchmark::State& s) { run_point_bench(s, SimMode::Active, Execution::Serial); }
void BM_ActiveParallel(benchmark::State& s) { run_point_bench(s, SimMode::Active, Execution::Parallel); }

void BM_Sweep(benchmark::State& state, Execution exec)
{
  SweepConfig cfg;
  cfg.scene.num_ris_elements = 64;
  cfg.drops = 4;
  cfg.power_grid = {30.0, 50.0, 70.0};
  cfg.modes = {SimMode::NoRis, SimMode::Passive, SimMode::Active, SimMode::Hybrid};
  for (auto _ : state)
    benchmark::DoNotOptimize(run_sweep(cfg, exec));
}

void BM_OptimizePassive(benchmark::State& state)
{
  const SceneConfig scene = bench_scene(static_cast<int>(state.range(0)));
  const ChannelSet ch = realize_channels(scene, 7);
  const NoisePowers noise = NoisePowers::from_scene(scene);
  const OptimizerOptions opts;
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_passive(ch, dbm_to_watts(50.0), noise, opts));
}

}  // namespace

BENCHMARK(BM_PassiveSerial)->Arg(64)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PassiveParallel)->Arg(64)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ActiveSerial)->Arg(64)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActiveParallel)->Arg(64)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sweep, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimizePassive)->Arg(16)->Arg(64)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
