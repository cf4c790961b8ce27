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
#include <sstream>

#include "docmark/evaluation.hpp"
#include "test_support.hpp"

namespace docmark {
namespace {

// Direct elementwise evaluation of the bit error rate and the normalized
// cross-correlation, kept deliberately naive.
double oracle_ber(const Watermark& a, const Watermark& b) {
  double e = 0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) e += (a(r, c) != b(r, c)) ? 1.0 : 0.0;
  return e / static_cast<double>(a.rows() * a.cols());
}

double oracle_ncc(const Watermark& a, const Watermark& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      ab += double(a(r, c)) * double(b(r, c));
      aa += double(a(r, c)) * double(a(r, c));
      bb += double(b(r, c)) * double(b(r, c));
    }
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

TEST(Metrics, MatchBruteForceOnRandomPairs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_watermark(rng(), 8, 8);
    const auto b = testing::random_watermark(rng(), 8, 8);
    ASSERT_NEAR(ber(a, b), oracle_ber(a, b), 1e-12);
    if (!ncc_degenerate(a, b)) ASSERT_NEAR(ncc(a, b), oracle_ncc(a, b), 1e-12);
  }
}

TEST(Metrics, IdenticalWatermarks) {
  const auto wm = testing::random_watermark(1);
  EXPECT_EQ(ber(wm, wm), 0.0);
  EXPECT_DOUBLE_EQ(ncc(wm, wm), 1.0);
}

TEST(Metrics, OneBitOfFourThousand) {
  auto wm = testing::random_watermark(2);
  auto other = wm;
  other.set_bit(100, !wm.bit(100));
  EXPECT_NEAR(ber(wm, other), 1.0 / 4096.0, 1e-15);
  EXPECT_EQ(format_metric(ber(wm, other)), "0.0002");
  EXPECT_EQ(bit_errors(wm, other), 1u);
}

TEST(Metrics, SubsetOverlapGivesInverseRootTwo) {
  Watermark all(64, 64);
  for (std::size_t i = 0; i < all.size(); ++i) all.set_bit(i, true);
  Watermark half(64, 64);
  for (std::size_t i = 0; i < half.size(); i += 2) half.set_bit(i, true);
  EXPECT_NEAR(ncc(all, half), 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(ncc(all, half), 0.7071, 1e-4);
}

TEST(Metrics, ComplementHasZeroNcc) {
  const auto wm = testing::random_watermark(3);
  Watermark inv(64, 64);
  for (std::size_t i = 0; i < wm.size(); ++i) inv.set_bit(i, !wm.bit(i));
  EXPECT_EQ(ber(wm, inv), 1.0);
  EXPECT_EQ(ncc(wm, inv), 0.0);
}

TEST(Metrics, DegenerateNccIsReportedAsWarning) {
  const Watermark zeros(8, 8);
  const auto wm = testing::random_watermark(4, 8, 8);
  EXPECT_TRUE(ncc_degenerate(zeros, wm));
  const auto report = make_report(wm, zeros);
  EXPECT_EQ(report.ncc, 0.0);
  EXPECT_FALSE(report.warnings.empty());
  EXPECT_EQ(report.total_bits, 64u);
  EXPECT_EQ(report.error_bits, wm.count_ones());
}

TEST(Metrics, ShapeMismatchRejected) {
  EXPECT_THROW(ber(Watermark(8, 8), Watermark(4, 16)), Error);
  EXPECT_THROW(ncc(Watermark(8, 8), Watermark(8, 4)), Error);
}

TEST(Psnr, IdenticalIsInfinite) {
  const auto img = testing::random_image(1, 64);
  EXPECT_TRUE(std::isinf(psnr(img, img)));
  EXPECT_EQ(format_metric(psnr(img, img)), "inf");
}

TEST(Psnr, UnitErrorEverywhere) {
  const Image a(16, 16, 100);
  const Image b(16, 16, 101);
  EXPECT_NEAR(psnr(a, b), 10.0 * std::log10(255.0 * 255.0), 1e-9);
}

TEST(Psnr, RejectsMismatchedSizes) {
  EXPECT_THROW(psnr(Image(8, 8), Image(8, 16)), Error);
}

TEST(Attacks, LabelsRoundTrip) {
  const char* labels[] = {"jpeg:none", "jpeg:high", "jpeg-q:42", "brightness:+10",
                          "brightness:-5", "crop:0.75", "scale:0.5"};
  for (const char* l : labels) EXPECT_EQ(parse_attack(l).label(), l);
  EXPECT_EQ(parse_attack("minimum").label(), "jpeg:minimum");
  EXPECT_THROW(parse_attack("blur:3"), Error);
}

TEST(Attacks, QualityFollowsTierMap) {
  TierQualityMap m;
  m.high = 80;
  EXPECT_EQ(parse_attack("jpeg:high").quality(m), 80);
  EXPECT_EQ(parse_attack("jpeg-q:33").quality(m), 33);
  EXPECT_FALSE(parse_attack("jpeg:none").quality(m).has_value());
  EXPECT_FALSE(parse_attack("crop:0.9").quality(m).has_value());
}

TEST(Attacks, OutOfRangeParametersRejected) {
  const Image img(16, 16, 50);
  EXPECT_THROW(apply_attack(img, {JpegQualityAttack{0}}), Error);
  EXPECT_THROW(apply_attack(img, {BrightnessAttack{65}}), Error);
  EXPECT_THROW(apply_attack(img, {CropCenterAttack{0.4}}), Error);
  EXPECT_THROW(apply_attack(img, {ScaleAttack{2.5}}), Error);
}

TEST(Attacks, NoneTierIsIdentity) {
  const auto img = testing::random_image(5, 64);
  EXPECT_EQ(apply_attack(img, {JpegAttack{QualityTier::None}}), img);
}

TEST(Attacks, BrightnessSaturates) {
  Image img(2, 1);
  img(0, 0) = 250;
  img(0, 1) = 3;
  const auto up = apply_attack(img, {BrightnessAttack{10}});
  EXPECT_EQ(up(0, 0), 255);
  EXPECT_EQ(up(0, 1), 13);
  const auto down = apply_attack(img, {BrightnessAttack{-10}});
  EXPECT_EQ(down(0, 0), 240);
  EXPECT_EQ(down(0, 1), 0);
}

TEST(Attacks, CropKeepsCentreAndRefillsBorder) {
  const Image img(100, 100, 7);
  const auto out = apply_attack(img, {CropCenterAttack{0.5}});
  EXPECT_EQ(out(0, 0), 128);
  EXPECT_EQ(out(24, 50), 128);
  EXPECT_EQ(out(25, 25), 7);
  EXPECT_EQ(out(74, 74), 7);
  EXPECT_EQ(out(75, 75), 128);
}

TEST(Attacks, ScaleOfOneIsIdentityAndConstantSurvives) {
  const auto img = testing::random_image(6, 64);
  EXPECT_EQ(apply_attack(img, {ScaleAttack{1.0}}), img);
  const Image flat(64, 64, 90);
  EXPECT_EQ(apply_attack(flat, {ScaleAttack{0.5}}), flat);
}

TEST(Attacks, ResizeBilinearKeepsRamps) {
  Image ramp(8, 1);
  for (std::size_t c = 0; c < 8; ++c) ramp(0, c) = static_cast<std::uint8_t>(c * 10);
  const auto up = resize_bilinear(ramp, 16, 1);
  ASSERT_EQ(up.width(), 16u);
  for (std::size_t c = 1; c < 16; ++c) EXPECT_GE(up(0, c), up(0, c - 1));
}

BenchResult small_bench(const std::vector<AttackSpec>& attacks) {
  std::vector<BenchImage> images{{"coffee", testing::corpus_image("coffee")},
                                 {"ill_fish", testing::corpus_image("ill_fish")}};
  WatermarkKey k;
  k.scramble.permutation_seed = 9;
  return run_bench(images, {SchemeId::SpatialDcQim, SchemeId::DctInterBlockDiff}, attacks,
                   testing::random_watermark(1), k);
}

TEST(Bench, SingleCleanCell) {
  std::vector<BenchImage> images{{"camera", testing::corpus_image("camera")}};
  const auto r = run_bench(images, {SchemeId::SpatialDcQim}, {parse_attack("none")},
                           testing::random_watermark(2), {});
  ASSERT_EQ(r.cells.size(), 1u);
  ASSERT_TRUE(r.cells[0].report.has_value());
  EXPECT_EQ(r.cells[0].report->ber, 0.0);
  EXPECT_FALSE(r.cells[0].quality.has_value());
  EXPECT_GE(r.cells[0].embed_psnr_db, 35.0);
}

TEST(Bench, CsvLayoutAndDeterminism) {
  const std::vector<AttackSpec> attacks{parse_attack("none"), parse_attack("high")};
  const auto a = bench_csv(small_bench(attacks));
  const auto b = bench_csv(small_bench(attacks));
  EXPECT_EQ(a, b);
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "image,scheme,attack,quality,ber,ncc,psnr_db");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("coffee,spatial-dc-qim,jpeg:none,,0.0000,1.0000,", 0), 0u) << line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("coffee,spatial-dc-qim,jpeg:high,75,", 0), 0u) << line;
  std::size_t rows = 0;
  std::istringstream again(a);
  while (std::getline(again, line)) ++rows;
  EXPECT_EQ(rows, 1u + 2 * 2 * 2);
}

TEST(Bench, MarkdownHasOneTablePerScheme) {
  const auto md = bench_markdown(small_bench({parse_attack("none"), parse_attack("minimum")}));
  EXPECT_NE(md.find("## spatial-dc-qim"), std::string::npos);
  EXPECT_NE(md.find("## dct-interblock-diff"), std::string::npos);
  EXPECT_EQ(md.find("## hybrid-dct-dwt"), std::string::npos);
  EXPECT_NE(md.find("| Compression quality | coffee | ill_fish |"), std::string::npos);
  EXPECT_NE(md.find("| No | BER = 0.0000 NCC = 1.0000 |"), std::string::npos);
  EXPECT_NE(md.find("| Minimum |"), std::string::npos);
}

TEST(Bench, FailedEmbedBecomesErrorCell) {
  std::vector<BenchImage> images{{"tiny", Image(64, 64, 100)}};
  const auto r = run_bench(images, {SchemeId::SpatialDcQim}, {parse_attack("none")},
                           testing::random_watermark(3), {});
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_FALSE(r.cells[0].report.has_value());
  EXPECT_NE(r.cells[0].error.find("capacity"), std::string::npos);
  EXPECT_NE(bench_csv(r).find("tiny,spatial-dc-qim,jpeg:none,,error,error,error"),
            std::string::npos);
}

TEST(Bench, FindLocatesCells) {
  const auto r = small_bench({parse_attack("none"), parse_attack("low")});
  const auto* c = r.find("ill_fish", SchemeId::DctInterBlockDiff, 1);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->quality, 30);
  EXPECT_EQ(r.find("nope", SchemeId::SpatialDcQim, 0), nullptr);
}

}  // namespace
}  // namespace docmark
