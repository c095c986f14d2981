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

#include "seqmatch/rng.hpp"

namespace seqmatch {
namespace {

void BM_PhiloxBlock(benchmark::State& state) {
  Philox4x32::Counter ctr{0, 0, 0, 0};
  const Philox4x32::Key key{1, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Philox4x32::block(ctr, key));
    ++ctr[0];
  }
}
BENCHMARK(BM_PhiloxBlock);

void BM_CounterStreamSequential(benchmark::State& state) {
  CounterStream s(42, 0);
  std::uint64_t pos = 0;
  for (auto _ : state) benchmark::DoNotOptimize(s.uniform(0, pos++));
}
BENCHMARK(BM_CounterStreamSequential);

}  // namespace
}  // namespace seqmatch

BENCHMARK_MAIN();
