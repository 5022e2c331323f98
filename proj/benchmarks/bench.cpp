// Copyright 2026 The hbdcover Authors
//
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

#include <benchmark/benchmark.h>

#include "hbd/covering_builder.hpp"
#include "hbd/covering_verifier.hpp"
#include "hbd/shift_dynamics.hpp"
#include "hbd/zoo.hpp"

using namespace hbd;

static void BM_ResolutionCovering(benchmark::State& state) {
  const auto h = hilbert_square();
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(resolution_covering(h, m));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * m)));
}
BENCHMARK(BM_ResolutionCovering)->DenseRange(4, 8, 2);

static void BM_BuildTaggedCovering(benchmark::State& state) {
  const auto fam = *zoo_family(state.range(0) == 0 ? "sierpinski" : "hilbert-square");
  const auto params = BuilderParams::stage_fit(fam, 1, 8, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_tagged_covering(fam, params));
}
BENCHMARK(BM_BuildTaggedCovering)->Arg(0)->Arg(1);

static void BM_VerifySeparation(benchmark::State& state) {
  const auto fam = *zoo_family("unit-interval");
  const auto cov =
      build_tagged_covering(fam, BuilderParams::stage_fit(fam, static_cast<int>(state.range(0)), 4, 8.0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_separation(cov, 8.0, 1.0));
  state.counters["q"] = static_cast<double>(cov.q);
}
BENCHMARK(BM_VerifySeparation)->Arg(1)->Arg(2);

static void BM_JumpLemma(benchmark::State& state) {
  const auto fam = *zoo_family("hilbert-square");
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_jump_lemma(fam, m));
}
BENCHMARK(BM_JumpLemma)->Arg(3)->Arg(4);

static void BM_BackwardPower(benchmark::State& state) {
  const auto fam = power_family(0.5, {1, 2});
  const auto plain = [&] {
    auto f = fam;
    f.cumulative = nullptr;
    return f;
  }();
  const auto& use = state.range(1) == 0 ? fam : plain;
  const auto u = forward_power(fam, 1.5, 100, SequenceFactor::basis(1, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(backward_power(use, 1.5, 100, u));
}
BENCHMARK(BM_BackwardPower)->Args({1000, 0})->Args({1000, 1})->Args({10000, 0})->Args({10000, 1});

static void BM_RunDynamics(benchmark::State& state) {
  const auto frac = *zoo_family("sierpinski");
  const auto fam = rolewicz_family({1, 2});
  DynamicsOptions opt;
  opt.interval = {1, 2};
  opt.eta = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(run_dynamics(frac, fam, opt));
}
BENCHMARK(BM_RunDynamics)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
