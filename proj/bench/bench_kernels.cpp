//------------------------------------------------------------------------------
//
//   Copyright 2026 The tenlog Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Serial reference against OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "tenlog/einsum.hpp"
#include "tenlog/kg.hpp"
#include "tenlog/optimizer.hpp"
#include "tenlog/syntax.hpp"

using namespace tenlog;

namespace {

DenseTensor random_tensor(std::vector<std::size_t> shape, std::uint64_t seed) {
  DenseTensor t(std::move(shape));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& x : t.data()) x = u(rng);
  return t;
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseTensor a = random_tensor({n, n}, 1);
  const DenseTensor b = random_tensor({n, n}, 2);
  const EinsumSpec spec = EinsumSpec::parse("ij,jk->ik");
  for (auto _ : state) benchmark::DoNotOptimize(einsum(spec, {&a, &b}, mode(state)));
}
BENCHMARK(BM_Matmul)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

// Scores for every object at once: s[i] * V[o,i] * r[i].
void BM_ScoreAllObjects(benchmark::State& state) {
  const auto o = static_cast<std::size_t>(state.range(0));
  const DenseTensor s = random_tensor({256}, 3);
  const DenseTensor v = random_tensor({o, 256}, 4);
  const DenseTensor r = random_tensor({256}, 5);
  const EinsumSpec spec = EinsumSpec::parse("i,oi,i->o");
  for (auto _ : state) benchmark::DoNotOptimize(einsum(spec, {&s, &v, &r}, mode(state)));
}
BENCHMARK(BM_ScoreAllObjects)->ArgsProduct({{14951}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_AdamStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TensorKey key{Term::constant("w"), {"o", "i"}};
  ParamStore params({{"o", n / 256}, {"i", 256}}, 0);
  params.ensure(key);
  const std::map<TensorKey, DenseTensor> grads{{key, random_tensor({n / 256, 256}, 6)}};
  OptimizerState opt;
  for (auto _ : state) adam_step(opt, params, grads, mode(state));
}
BENCHMARK(BM_AdamStep)->ArgsProduct({{1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RankQueries(benchmark::State& state) {
  const auto splits = make_block_kg(0);
  const TripleStore store = make_store(splits, UnseenPolicy::Skip);
  SourceProgram program = parse_program(
      "index_list(v(_),[[i]]). index_list(v,[[o,i]]). index_list(r(_),[[i]]).\n"
      ":- set_index_range(i,64).\n:- set_index_range(o,50).\n"
      "rel(S,R,O) :- tensor(v(S),[i]), tensor(v,[o,i]), tensor(r(R),[i]).\n");
  GoalModel model(program, store.entities, 2);
  ParamStore params(program.ranges(), 0);
  auto queries = triples_to_goals(store.splits.at("train").triples, store.entities, store.relations, "rel");
  RankOptions opts;
  opts.exec = mode(state);
  evaluate_ranking(model, params, queries, opts);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_ranking(model, params, queries, opts));
}
BENCHMARK(BM_RankQueries)->ArgsProduct({{400}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
