// Copyright 2026 The qpd-optics Authors
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

#include "qpd/equilibrium.hpp"
#include "qpd/fock.hpp"
#include "qpd/game.hpp"
#include "qpd/optics.hpp"

namespace {

using namespace qpd;

void BM_ExponentiateHopping(benchmark::State& state) {
  const fock::Sector sector{4, static_cast<int>(state.range(0))};
  const auto g = fock::hopping_generator(sector, 0, 3,
                                         fock::HoppingSymmetry::kSymmetric);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fock::exponentiate(g, 0.3, fock::PhaseSign::kNegative));
  }
}
BENCHMARK(BM_ExponentiateHopping)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

void BM_StrategyCircuitUnitary(benchmark::State& state) {
  const auto c = optics::strategy_circuit(1.1, 0.6, optics::kAlicePair);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::circuit_unitary(c, fock::kGameSector));
  }
}
BENCHMARK(BM_StrategyCircuitUnitary);

void BM_SolveJGatePhases(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::solve_jgate_phases(0.9));
  }
}
BENCHMARK(BM_SolveJGatePhases)->Unit(benchmark::kMillisecond);

void BM_PlayQubit(benchmark::State& state) {
  game::GameConfig c;
  c.gamma = 0.9;
  const game::Game g(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.play({1.0, 0.4}, {2.0, 1.1}));
  }
}
BENCHMARK(BM_PlayQubit);

void BM_PlayOptical(benchmark::State& state) {
  game::GameConfig c;
  c.gamma = 0.9;
  c.backend = game::Backend::kOptical;
  const game::Game g(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.play({1.0, 0.4}, {2.0, 1.1}));
  }
}
BENCHMARK(BM_PlayOptical)->Unit(benchmark::kMicrosecond);

void BM_FindEquilibria(benchmark::State& state) {
  game::GameConfig c;
  c.gamma = 1.2;
  const game::Game g(c);
  const equilibrium::StrategyGrid grid{static_cast<int>(state.range(0)),
                                       static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(equilibrium::find_equilibria(g, grid));
  }
}
BENCHMARK(BM_FindEquilibria)->Args({17, 9})->Args({33, 17})->Unit(benchmark::kMillisecond);

void BM_ThresholdSweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(equilibrium::threshold_sweep(game::GameConfig{}));
  }
}
BENCHMARK(BM_ThresholdSweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
