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

#include "seqmatch/exponents.hpp"

namespace seqmatch {
namespace {

std::vector<Distribution> bern(std::initializer_list<double> ps) {
  std::vector<Distribution> out;
  for (double p : ps) out.push_back(Distribution::bernoulli(p));
  return out;
}

void BM_ExponentEs(benchmark::State& state) {
  const SourceModel m(ProblemDims(4, 3), bern({0.1, 0.12, 0.3, 0.6}), bern({0.1, 0.12, 0.4}),
                      MatchingSet({{0, 0}, {1, 1}}), Rates(1, 1));
  const HypothesisSpace space(m.dims());
  for (auto _ : state) benchmark::DoNotOptimize(exponent_E_s(m, space));
}
BENCHMARK(BM_ExponentEs);

void BM_ExponentEf(benchmark::State& state) {
  const SourceModel m(ProblemDims(3, 1), bern({0.2, 0.5, 0.7}), bern({0.5}), MatchingSet({{1, 0}}), Rates(1, 1));
  const HypothesisSpace space(m.dims());
  for (auto _ : state) benchmark::DoNotOptimize(exponent_E_f(m, space));
}
BENCHMARK(BM_ExponentEf)->Unit(benchmark::kMillisecond);

void BM_ConstrainedSinglePair(benchmark::State& state) {
  const SourceModel m(ProblemDims(2, 1), bern({0.1, 0.5}), bern({0.9}), std::nullopt, Rates(1, 1));
  const std::vector<PairSumConstraint> c{score_at_most(MatchingSet({{1, 0}}), 0.05)};
  for (auto _ : state) benchmark::DoNotOptimize(exponent_constrained(m, c));
}
BENCHMARK(BM_ConstrainedSinglePair)->Unit(benchmark::kMicrosecond);

void BM_ExponentG(benchmark::State& state) {
  const SourceModel m(ProblemDims(4, 3), bern({0.1, 0.3, 0.15, 0.8}), bern({0.1, 0.3, 0.4}),
                      MatchingSet({{0, 0}, {1, 1}}), Rates(1, 1));
  const HypothesisSpace space(m.dims());
  for (auto _ : state) benchmark::DoNotOptimize(exponent_G(m, space, 0.04));
}
BENCHMARK(BM_ExponentG)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace seqmatch
