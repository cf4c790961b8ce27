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

#include "docmark/evaluation.hpp"
#include "docmark/schemes.hpp"
#include "docmark/watermark_gen.hpp"

namespace {

using namespace docmark;

const Image& cover() {
  static const Image img = read_image(DOCMARK_CORPUS_DIR "/camera.pgm");
  return img;
}

const Watermark& payload() {
  static const Watermark wm = generate_context_watermark({"bench", "doc", "figure"});
  return wm;
}

WatermarkKey key() {
  WatermarkKey k;
  k.scramble.permutation_seed = 7;
  return k;
}

void BM_Embed(benchmark::State& state) {
  const auto scheme = kAllSchemes[state.range(0)];
  state.SetLabel(std::string(scheme_name(scheme)));
  for (auto _ : state) benchmark::DoNotOptimize(embed(scheme, cover(), payload(), key()));
}
BENCHMARK(BM_Embed)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Extract(benchmark::State& state) {
  const auto scheme = kAllSchemes[state.range(0)];
  state.SetLabel(std::string(scheme_name(scheme)));
  const auto marked = embed(scheme, cover(), payload(), key()).image;
  const Image* ref = is_blind(scheme) ? nullptr : &cover();
  for (auto _ : state) benchmark::DoNotOptimize(extract(scheme, marked, key(), ref));
}
BENCHMARK(BM_Extract)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_JpegCycle(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jpeg_cycle(cover(), q));
}
BENCHMARK(BM_JpegCycle)->Arg(90)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Psnr(benchmark::State& state) {
  const auto other = jpeg_cycle(cover(), 50);
  for (auto _ : state) benchmark::DoNotOptimize(psnr(cover(), other));
}
BENCHMARK(BM_Psnr)->Unit(benchmark::kMicrosecond);

}  // namespace
