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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "docmark/evaluation.hpp"
#include "docmark/schemes.hpp"
#include "test_support.hpp"

namespace docmark {
namespace {

using testing::throws_error;

WatermarkKey key_with_seed(std::uint64_t seed) {
  WatermarkKey k;
  k.scramble.permutation_seed = seed;
  return k;
}

Watermark round_trip(SchemeId s, const Image& cover, const Watermark& wm, const WatermarkKey& k) {
  const auto marked = embed(s, cover, wm, k);
  return extract(s, marked.image, k, is_blind(s) ? nullptr : &cover);
}

TEST(Qim, TargetMeanDecodesToRequestedBit) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  for (double delta : {4.0, 6.5, 16.0}) {
    for (int i = 0; i < 2000; ++i) {
      const double m = u(rng);
      const int bit = static_cast<int>(rng() & 1);
      const double t = qim::target_mean(m, delta, bit);
      ASSERT_EQ(qim::decode_bit(t, delta), bit);
      ASSERT_GE(t, 0.0);
      ASSERT_LE(t, 255.0);
      if (m >= delta && m <= 255.0 - delta) ASSERT_LE(std::abs(t - m), delta + 1e-12);
    }
  }
}

TEST(Qim, NearestCellCentreOfMatchingParity) {
  // mean 100 with step 16 sits in cell 6 (even): bit 0 keeps the cell centre,
  // bit 1 moves to the closer odd centre, 88 rather than 120.
  EXPECT_DOUBLE_EQ(qim::target_mean(100.0, 16.0, 0), 104.0);
  EXPECT_DOUBLE_EQ(qim::target_mean(100.0, 16.0, 1), 88.0);
  EXPECT_EQ(qim::decode_bit(104.0, 16.0), 0);
  EXPECT_EQ(qim::decode_bit(88.0, 16.0), 1);
  EXPECT_DOUBLE_EQ(qim::target_difference(70.0, 30.0, 1), 90.0);
  EXPECT_DOUBLE_EQ(qim::target_difference(70.0, 30.0, 0), 30.0);
}

TEST(Qim, CellCentresAreStableUnderSmallNoise) {
  const double delta = 6.5;
  for (int k = 2; k < 36; ++k) {
    const double centre = delta * (k + 0.5);
    const int bit = qim::decode_bit(centre, delta);
    EXPECT_EQ(qim::decode_bit(centre + 0.49 * delta, delta), bit);
    EXPECT_EQ(qim::decode_bit(centre - 0.49 * delta, delta), bit);
  }
}

TEST(Qim, TargetDifferenceDecodesToRequestedBit) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-400.0, 400.0);
  for (double t : {10.0, 28.0}) {
    for (int i = 0; i < 2000; ++i) {
      const double d = u(rng);
      const int bit = static_cast<int>(rng() & 1);
      const double target = qim::target_difference(d, t, bit);
      ASSERT_EQ(qim::decode_difference(target, t), bit);
      ASSERT_LE(std::abs(target - d), 2.0 * t + 1e-12);
    }
  }
}

TEST(Schemes, NamesAndAliases) {
  for (auto s : kAllSchemes) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_EQ(parse_scheme("spatial"), SchemeId::SpatialDcQim);
  EXPECT_EQ(parse_scheme("dct"), SchemeId::DctInterBlockDiff);
  EXPECT_EQ(parse_scheme("HybridDctDwt"), SchemeId::HybridDctDwt);
  EXPECT_THROW(parse_scheme("lsb"), Error);
  EXPECT_TRUE(is_blind(SchemeId::SpatialDcQim));
  EXPECT_TRUE(is_blind(SchemeId::DctInterBlockDiff));
  EXPECT_FALSE(is_blind(SchemeId::HybridDctDwt));
}

TEST(Schemes, KeyValidation) {
  WatermarkKey k;
  EXPECT_NO_THROW(k.validate());
  k.delta = 0;
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "delta", [&] { k.validate(); }));
  k = {};
  k.t_interval = -1;
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "t_interval", [&] { k.validate(); }));
  k = {};
  k.alpha = 1.5;
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "alpha", [&] { k.validate(); }));
  k = {};
  k.scramble.arnold_iterations = 0;
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "arnold", [&] { k.validate(); }));
}

TEST(Schemes, CapacityIsChecked) {
  const auto wm = testing::random_watermark(1);
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "capacity",
                           [&] { check_capacity(Image(256, 256, 100), wm); }));
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "multiples of 8",
                           [&] { check_capacity(Image(510, 512, 100), wm); }));
  EXPECT_NO_THROW(check_capacity(Image(512, 512, 100), wm));
  for (auto s : kAllSchemes) {
    EXPECT_THROW(embed(s, Image(256, 256, 100), wm, {}), Error) << scheme_name(s);
  }
}

TEST(Schemes, InvalidKeyRejectedByEmbed) {
  WatermarkKey k;
  k.delta = -2;
  EXPECT_THROW(embed(SchemeId::SpatialDcQim, Image(512, 512, 100), testing::random_watermark(1), k),
               Error);
}

TEST(Schemes, HybridNeedsCoverAndBlindRejectsOne) {
  const Image cover = testing::corpus_image("camera");
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "non-blind",
                           [&] { extract(SchemeId::HybridDctDwt, cover, {}); }));
  EXPECT_THROW(extract(SchemeId::SpatialDcQim, cover, {}, &cover), Error);
  const Image small(256, 256, 0);
  EXPECT_TRUE(throws_error(ErrorKind::Validation, "dimension mismatch",
                           [&] { extract(SchemeId::HybridDctDwt, cover, {}, &small); }));
}

class RoundTrip : public ::testing::TestWithParam<SchemeId> {};

TEST_P(RoundTrip, RecoversWatermarkOnDetailedCover) {
  const auto cover = testing::corpus_image("camera");
  const auto wm = testing::random_watermark(21);
  const auto k = key_with_seed(1234);
  EXPECT_EQ(round_trip(GetParam(), cover, wm, k), wm);
}

TEST_P(RoundTrip, RecoversStructuredWatermark) {
  const auto cover = testing::corpus_image("motorcycle");
  Watermark wm(64, 64);
  for (std::size_t r = 16; r < 48; ++r)
    for (std::size_t c = 16; c < 48; ++c) wm(r, c) = 1;
  EXPECT_EQ(round_trip(GetParam(), cover, wm, key_with_seed(5)), wm);
}

TEST_P(RoundTrip, RecoversOnRandomSmoothCovers) {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const auto cover = testing::random_image(100 + seed);
    const auto wm = testing::random_watermark(seed);
    const auto k = key_with_seed(seed * 7 + 1);
    EXPECT_LE(ber(wm, round_trip(GetParam(), cover, wm, k)), 0.002);
  }
}

TEST_P(RoundTrip, EmbeddingIsDeterministic) {
  const auto cover = testing::corpus_image("coffee");
  const auto wm = testing::random_watermark(8);
  const auto k = key_with_seed(99);
  const auto a = embed(GetParam(), cover, wm, k);
  const auto b = embed(GetParam(), cover, wm, k);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.wm_digest, watermark_digest(wm));
  EXPECT_EQ(a.scheme, GetParam());
}

TEST_P(RoundTrip, MarkedImageIsImperceptible) {
  const auto cover = testing::corpus_image("astronaut");
  const auto marked = embed(GetParam(), cover, testing::random_watermark(4), key_with_seed(3));
  EXPECT_GE(psnr(cover, marked.image), 35.0);
  EXPECT_NE(marked.image, cover);
}

TEST_P(RoundTrip, WrongSeedReadsNoise) {
  const auto cover = testing::corpus_image("gravel");
  const auto wm = testing::random_watermark(6);
  const auto marked = embed(GetParam(), cover, wm, key_with_seed(1));
  double total = 0.0;
  for (std::uint64_t s = 2; s < 7; ++s) {
    const auto got = extract(GetParam(), marked.image, key_with_seed(s),
                             is_blind(GetParam()) ? nullptr : &cover);
    total += ber(wm, got);
  }
  const double mean = total / 5.0;
  EXPECT_GE(mean, 0.45);
  EXPECT_LE(mean, 0.55);
}

TEST_P(RoundTrip, SmallerSquareWatermark) {
  const auto cover = testing::corpus_image("camera");
  const auto wm = testing::random_watermark(31, 32, 32);
  const auto k = key_with_seed(77);
  const auto marked = embed(GetParam(), cover, wm, k);
  const auto got =
      extract(GetParam(), marked.image, k, is_blind(GetParam()) ? nullptr : &cover, 32, 32);
  EXPECT_EQ(got, wm);
}

INSTANTIATE_TEST_SUITE_P(AllSchemes, RoundTrip, ::testing::ValuesIn(kAllSchemes),
                         [](const auto& info) {
                           switch (info.param) {
                             case SchemeId::SpatialDcQim: return std::string("Spatial");
                             case SchemeId::DctInterBlockDiff: return std::string("DctDiff");
                             case SchemeId::HybridDctDwt: return std::string("Hybrid");
                           }
                           return std::string("Unknown");
                         });

TEST(Spatial, IllustrationRoundTripWithinOnePercent) {
  for (const auto& name : testing::illustration_names()) {
    const auto cover = testing::corpus_image(name);
    const auto wm = testing::random_watermark(12);
    EXPECT_LE(ber(wm, round_trip(SchemeId::SpatialDcQim, cover, wm, key_with_seed(2))), 0.01)
        << name;
  }
}

TEST(Spatial, SaturatedCoversStillCarryTheMark) {
  const auto wm = testing::random_watermark(1);
  for (std::uint8_t fill : {0, 255}) {
    const Image cover(512, 512, fill);
    const auto marked = embed(SchemeId::SpatialDcQim, cover, wm, {});
    EXPECT_TRUE(marked.warnings.empty());
    EXPECT_EQ(extract(SchemeId::SpatialDcQim, marked.image, {}), wm) << int(fill);
  }
}

TEST(Spatial, BlockMeanMovesByAtMostDelta) {
  const auto cover = testing::corpus_image("coffee");
  const WatermarkKey k = key_with_seed(10);
  const auto marked = embed(SchemeId::SpatialDcQim, cover, testing::random_watermark(2), k);
  for (std::size_t br = 0; br < 64; ++br) {
    for (std::size_t bc = 0; bc < 64; ++bc) {
      double a = 0, b = 0;
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) {
          a += cover(br * 8 + r, bc * 8 + c);
          b += marked.image(br * 8 + r, bc * 8 + c);
        }
      ASSERT_LE(std::abs(a - b) / 64.0, k.delta + 0.5);
    }
  }
}

TEST(Hybrid, AlphaTradesRobustnessForFidelity) {
  const auto cover = testing::corpus_image("camera");
  const auto wm = testing::random_watermark(3);
  WatermarkKey weak = key_with_seed(4);
  weak.alpha = 0.02;
  WatermarkKey strong = weak;
  strong.alpha = 0.06;
  const double p_weak = psnr(cover, embed(SchemeId::HybridDctDwt, cover, wm, weak).image);
  const double p_strong = psnr(cover, embed(SchemeId::HybridDctDwt, cover, wm, strong).image);
  EXPECT_GT(p_weak, p_strong);
}

TEST(Hybrid, RejectsOddWatermarkSide) {
  EXPECT_THROW(embed(SchemeId::HybridDctDwt, testing::corpus_image("camera"),
                     testing::random_watermark(1, 63, 63), {}),
               Error);
}

}  // namespace
}  // namespace docmark
