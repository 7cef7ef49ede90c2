// Copyright 2026 The lpplab Authors.
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

#include <vector>

#include "lpplab/batch_passage.hpp"
#include "lpplab/corner_passage.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/geometry.hpp"
#include "lpplab/passage.hpp"
#include "lpplab/weight_field.hpp"

namespace {

void BM_SampleRow(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  std::vector<double> row(static_cast<std::size_t>(w));
  int y = 0;
  for (auto _ : state) {
    lpp::sample_row(42, y++, 0, w, row.data());
    benchmark::DoNotOptimize(row.data());
  }
  state.SetItemsProcessed(state.iterations() * w);
}
BENCHMARK(BM_SampleRow)->Arg(1024)->Arg(16384);

void BM_PassageField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lpp::Box box{0, 0, n, n};
  const auto f = lpp::sample_field(7, box);
  for (auto _ : state) {
    auto pf = lpp::passage_field(f, {0, 0}, box);
    benchmark::DoNotOptimize(pf.value({n, n}));
  }
  state.SetItemsProcessed(state.iterations() * box.area());
}
BENCHMARK(BM_PassageField)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

// Streaming kernel: weights drawn row by row, no field held in memory.
void BM_CornerPassage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lpp::CornerOptions opt;
  opt.keep_path = state.range(1) != 0;
  if (state.range(2) != 0) opt.through = lpp::LatticePoint{n / 2, n / 2};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto cp = lpp::corner_passage(seed++, {0, 0}, {n, n}, opt);
    benchmark::DoNotOptimize(cp.value);
  }
  state.SetItemsProcessed(state.iterations() * (n + 1) * static_cast<std::int64_t>(n + 1));
}
BENCHMARK(BM_CornerPassage)
    ->Args({1000, 0, 0})
    ->Args({1000, 1, 0})
    ->Args({1000, 0, 1})
    ->Unit(benchmark::kMillisecond);

// Sixteen sources at once; the main cost of segment-to-segment work.
void BM_RunBatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = lpp::antidiag_segment(n, {0, 0});
  const auto b = lpp::antidiag_segment(n, {n, n});
  const auto region = lpp::hull(a.bounds(), b.bounds());
  const auto f = lpp::sample_field(3, region);
  const auto sources = a.points();
  const auto targets = b.points();
  lpp::BatchOptions opt;
  opt.keep_backsteps = state.range(1) != 0;
  const std::span<const lpp::LatticePoint> lanes(sources.data(), lpp::kLanes);
  for (auto _ : state) {
    auto batch = lpp::run_batch(f, lanes, region, targets, opt);
    benchmark::DoNotOptimize(batch.value(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * region.area());
}
BENCHMARK(BM_RunBatch)->Args({500, 0})->Args({500, 1})->Unit(benchmark::kMillisecond);

void BM_MaxDisjointFamily(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = lpp::antidiag_segment(n, {0, 0});
  const auto b = lpp::antidiag_segment(n, {n, n});
  const auto f = lpp::sample_field(5, lpp::hull(a.bounds(), b.bounds()));
  const lpp::SegmentGeodesics geo(f, a, b);
  for (auto _ : state) {
    auto fam = lpp::max_disjoint_family(geo);
    benchmark::DoNotOptimize(fam.count);
  }
}
BENCHMARK(BM_MaxDisjointFamily)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OriginHitTrial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpp::origin_hit_trial(seed++, n, 0.25, 4.0));
  }
}
BENCHMARK(BM_OriginHitTrial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
