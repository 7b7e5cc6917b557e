// Copyright 2026 The Authors.
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

// Serial reference against the OpenMP kernels. Arg 0 is the serial path;
// other args set the thread count for the parallel path.

#include <benchmark/benchmark.h>

#include "upa/bayesian.hpp"
#include "upa/equilibrium.hpp"
#include "upa/instances.hpp"
#include "upa/parallel.hpp"
#include "upa/strategies.hpp"

namespace {

using upa::Rational;

void BM_EnumeratePne(benchmark::State& state) {
  const auto ex = upa::paper_example(4);
  const auto grid = upa::build_grid(ex.instance, Rational(1, 12));
  const int jobs = static_cast<int>(state.range(0));
  upa::set_jobs(jobs);
  for (auto _ : state) {
    auto r = jobs == 0 ? upa::enumerate_undominated_pne_serial(ex.instance, grid)
                       : upa::enumerate_undominated_pne(ex.instance, grid);
    benchmark::DoNotOptimize(r);
  }
}

void BM_Dominance(benchmark::State& state) {
  const auto inst = upa::random_submodular(3, 3, 11, 4);
  const auto grid = upa::build_grid(inst, Rational(1, 4));
  const auto& b = grid.vectors[0].back();
  const upa::BidVector dom = upa::overbid_dominator(inst.valuation(0), b);
  const int jobs = static_cast<int>(state.range(0));
  upa::set_jobs(jobs);
  for (auto _ : state) {
    auto r = jobs == 0
                 ? upa::compare_against_opponents_serial(inst, 0, b, dom, grid.vectors)
                 : upa::compare_against_opponents(inst, 0, b, dom, grid.vectors);
    benchmark::DoNotOptimize(r);
  }
}

void BM_EnumerateBne(benchmark::State& state) {
  const auto a = upa::random_submodular(2, 2, 5, 3);
  const auto c = upa::random_submodular(2, 2, 6, 3);
  const upa::BayesianGame game(
      2, {{a.valuation(0), c.valuation(0)}, {a.valuation(1), c.valuation(1)}},
      {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)}});
  const auto grids = upa::build_bayes_grids(game, Rational(1, 3));
  const int jobs = static_cast<int>(state.range(0));
  upa::set_jobs(jobs);
  for (auto _ : state) {
    auto r = jobs == 0 ? upa::enumerate_pure_bne_serial(game, grids, true)
                       : upa::enumerate_pure_bne(game, grids, true);
    benchmark::DoNotOptimize(r);
  }
}

BENCHMARK(BM_EnumeratePne)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dominance)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateBne)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
