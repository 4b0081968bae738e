// Copyright 2026 The atlkd Authors
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

#include "atlkd/model_io.hpp"
#include "atlkd/oracle.hpp"
#include "atlkd/parser.hpp"
#include "atlkd/printer.hpp"
#include "atlkd/translator.hpp"
#include "atlkd/verify.hpp"

namespace {

using namespace atlkd;

void BM_ParseRender(benchmark::State& state) {
  const std::string text =
      "<<1,2>> (K{1,2} (p -> q & r) U K{1,2} (P{1} s | K{} p)) & E X A (p U q)";
  for (auto _ : state) {
    benchmark::DoNotOptimize(render(parse_formula(text)));
  }
}
BENCHMARK(BM_ParseRender);

void BM_Translate(benchmark::State& state) {
  Rng rng(17);
  const Formula f = random_subset_formula_with_until(
      rng, {"1", "2", "3"}, {"u", "v", "w"}, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(translate(f, TranslationMode::Incomplete));
  }
}
BENCHMARK(BM_Translate)->Arg(2)->Arg(3);

void BM_RunTree(benchmark::State& state) {
  const InterpretedSystem is = generate_random(2, 2, 2, 2, 5);
  for (auto _ : state) {
    RunTree tree(is, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(tree.size());
  }
}
BENCHMARK(BM_RunTree)->Arg(3)->Arg(4);

void BM_HoldsCoopNext(benchmark::State& state) {
  const InterpretedSystem is = generate_random(2, 2, 2, 2, 5);
  const Formula f = parse_formula("<<1>> X K{1} p0");
  RunTree tree(is, 3);
  for (auto _ : state) {
    Evaluator ev(tree);
    benchmark::DoNotOptimize(ev.sat_at_initial(f));
  }
}
BENCHMARK(BM_HoldsCoopNext);

void BM_LfpUntil(benchmark::State& state) {
  const InterpretedSystem is = generate_random(2, 2, 2, 2, 5);
  RunTree tree(is, static_cast<int>(state.range(0)));
  const Coalition g({"1", "2"});
  const Formula phi = Formula::atom("p0");
  const Formula psi = Formula::atom("p1");
  for (auto _ : state) {
    Evaluator ev(tree);
    benchmark::DoNotOptimize(ev.lfp_until(g, phi, psi));
  }
}
BENCHMARK(BM_LfpUntil)->Arg(3)->Arg(4);

void BM_UntilEnum(benchmark::State& state) {
  const InterpretedSystem is = generate_random(2, 2, 2, 2, 5);
  RunTree tree(is, 3);
  const Coalition g({"1"});
  const Formula kphi = Formula::dknows(g, Formula::atom("p0"));
  const Formula kpsi = Formula::dknows(g, Formula::atom("p1"));
  // a length-2 run keeps the relevant strategy space small
  const int node = tree.level_begin(2);
  for (auto _ : state) {
    Evaluator ev(tree);
    ev.set_strategy_budget(1 << 20);
    benchmark::DoNotOptimize(ev.eval_coop_until_enum(node, g, kphi, kpsi));
  }
}
BENCHMARK(BM_UntilEnum);

void BM_BuildIsAct(benchmark::State& state) {
  const InterpretedSystem is = generate_random(2, 2, 2, 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_is_act(is));
  }
}
BENCHMARK(BM_BuildIsAct);

}  // namespace

BENCHMARK_MAIN();
