// Copyright 2026 The optocav Authors
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

#include "optocav/fock/operators.hpp"
#include "optocav/lindblad/liouvillian.hpp"
#include "optocav/lindblad/observables.hpp"
#include "optocav/qle/analytic.hpp"
#include "optocav/qle/quadrature_oracle.hpp"

namespace {

using namespace optocav;

SystemParams point() {
  SystemParams p;
  p.g = 0.5;
  p.kappa1 = p.kappa2 = 0.3;
  p.gamma = 0.005;
  p.E1 = p.E2 = 0.001;
  p.delta1 = 0.25;
  p.delta2 = 0.4;
  p.J = 0.05;
  return p;
}

ModeLayout layout_arg(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return ModeLayout{n, n, static_cast<int>(state.range(1))};
}

void BM_Hamiltonian(benchmark::State& state) {
  const auto p = point();
  const auto layout = layout_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(fock::build_hamiltonian(p, layout));
}
BENCHMARK(BM_Hamiltonian)->Args({4, 16})->Args({5, 24})->Unit(benchmark::kMillisecond);

void BM_Liouvillian(benchmark::State& state) {
  const auto p = point();
  const auto layout = layout_arg(state);
  const auto h = fock::build_hamiltonian(p, layout);
  for (auto _ : state) benchmark::DoNotOptimize(lindblad::build_liouvillian(h, p, layout));
}
BENCHMARK(BM_Liouvillian)->Args({4, 16})->Args({5, 24})->Unit(benchmark::kMillisecond);

void BM_NumericPoint(benchmark::State& state) {
  const auto p = point();
  const auto layout = layout_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(lindblad::solve_numeric(p, layout));
}
BENCHMARK(BM_NumericPoint)->Args({3, 10})->Args({4, 16})->Unit(benchmark::kMillisecond);

void BM_AnalyticPoint(benchmark::State& state) {
  const auto p = point();
  const int m_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qle::analytic_point(p, qle::kAllOrders, m_max));
}
BENCHMARK(BM_AnalyticPoint)->Arg(8)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_QuadratureOracle(benchmark::State& state) {
  const auto p = point();
  for (auto _ : state) benchmark::DoNotOptimize(qle::quadrature_oracle_g2(p));
}
BENCHMARK(BM_QuadratureOracle)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
