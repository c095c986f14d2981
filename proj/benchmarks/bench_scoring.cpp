// Copyright 2026 The SeqMatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "seqmatch/seq_known.hpp"
#include "seqmatch/seq_unknown.hpp"
#include "seqmatch/simulator.hpp"

namespace seqmatch {
namespace {

SourceModel example_model() {
  auto b = [](double p) { return Distribution::bernoulli(p); };
  return SourceModel(ProblemDims(4, 3), {b(0.1), b(0.12), b(0.3), b(0.6)}, {b(0.1), b(0.12), b(0.4)},
                     MatchingSet({{0, 0}, {1, 1}}), Rates(1, 1));
}

void BM_PairScoreTable(benchmark::State& state) {
  const auto model = example_model();
  TrialStream stream(model, 1, 0);
  GrowingDatabase db(model.dims(), 2, model.rates(), stream);
  db.advance_to(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    PairScoreTable table(db.snapshot());
    benchmark::DoNotOptimize(table.at(0, 0));
  }
}
BENCHMARK(BM_PairScoreTable)->Arg(100)->Arg(10000);

void BM_AllHypothesisScores(benchmark::State& state) {
  const auto model = example_model();
  const HypothesisSpace space(model.dims());
  TrialStream stream(model, 1, 0);
  GrowingDatabase db(model.dims(), 2, model.rates(), stream);
  db.advance_to(200);
  for (auto _ : state) {
    HypothesisScores scores(space, db.snapshot());
    benchmark::DoNotOptimize(scores.min_all());
  }
}
BENCHMARK(BM_AllHypothesisScores);

void BM_SequentialKnownTrial(benchmark::State& state) {
  const auto model = example_model();
  const HypothesisSpace space(model.dims());
  TestSpec spec;
  spec.kind = TestKind::kSeqKnown;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(model, space, spec, static_cast<std::uint64_t>(state.range(0)), 7, trial++));
  }
}
BENCHMARK(BM_SequentialKnownTrial)->Arg(50)->Arg(500);

}  // namespace
}  // namespace seqmatch
