// Copyright 2026 The docmark Authors
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

#include <random>

#include "docmark/evaluation.hpp"
#include "docmark/transforms.hpp"
#include "docmark/watermark_gen.hpp"

namespace {

using namespace docmark;

RealMatrix random_matrix(std::size_t side) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  RealMatrix m(side, side);
  for (auto& v : m.data()) v = u(rng);
  return m;
}

void BM_Dct8(benchmark::State& state) {
  transforms::Block8 b{};
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<double>(i * 3 % 255);
  for (auto _ : state) {
    auto d = transforms::dct2_block(b);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_Dct8);

void BM_Idct8(benchmark::State& state) {
  transforms::Block8 b{};
  b[0] = 800.0;
  b[14] = -40.0;
  for (auto _ : state) {
    auto d = transforms::idct2_block(b);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_Idct8);

void BM_DctFull(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transforms::dct2(m));
}
BENCHMARK(BM_DctFull)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DctCorner(benchmark::State& state) {
  const auto m = random_matrix(512);
  for (auto _ : state) benchmark::DoNotOptimize(transforms::dct2_corner(m, 128, 128));
}
BENCHMARK(BM_DctCorner)->Unit(benchmark::kMillisecond);

void BM_Haar(benchmark::State& state) {
  const auto m = random_matrix(512);
  for (auto _ : state) benchmark::DoNotOptimize(transforms::haar_dwt(m));
}
BENCHMARK(BM_Haar)->Unit(benchmark::kMicrosecond);

void BM_Arnold(benchmark::State& state) {
  const auto wm = generate_context_watermark({"bench", "t", "c"});
  for (auto _ : state) benchmark::DoNotOptimize(transforms::arnold(wm, 7));
}
BENCHMARK(BM_Arnold)->Unit(benchmark::kMicrosecond);

void BM_KeyedPermutation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(transforms::keyed_permutation(4096, 99));
}
BENCHMARK(BM_KeyedPermutation)->Unit(benchmark::kMicrosecond);

void BM_ContextWatermark(benchmark::State& state) {
  const AuthorPayload p{"alice", "Annual report", "Figure 1. Revenue by quarter"};
  for (auto _ : state) benchmark::DoNotOptimize(generate_context_watermark(p));
}
BENCHMARK(BM_ContextWatermark)->Unit(benchmark::kMicrosecond);

void BM_BerNcc(benchmark::State& state) {
  const auto a = generate_context_watermark({"a", "t", "1"});
  const auto b = generate_context_watermark({"a", "t", "2"});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ber(a, b));
    benchmark::DoNotOptimize(ncc(a, b));
  }
}
BENCHMARK(BM_BerNcc);

}  // namespace
