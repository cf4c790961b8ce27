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
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "docmark/imaging.hpp"
#include "docmark/schemes.hpp"

namespace docmark {

// Fraction of differing bits.
double ber(const Watermark& original, const Watermark& extracted);
std::size_t bit_errors(const Watermark& original, const Watermark& extracted);

// Normalized cross-correlation sum(W * W') / (sqrt(sum W^2) * sqrt(sum W'^2)).
// Returns 0 when either side has no set bit; ncc_degenerate reports that case.
double ncc(const Watermark& original, const Watermark& extracted);
bool ncc_degenerate(const Watermark& original, const Watermark& extracted);

// 10 log10(255^2 / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b);

struct ExtractionReport {
  Watermark wm_extracted;
  std::size_t total_bits = 0;   // B
  std::size_t error_bits = 0;   // B_e
  double ber = 0.0;
  double ncc = 0.0;
  std::vector<std::string> warnings;
};

ExtractionReport make_report(const Watermark& original, Watermark extracted);

// Four decimals, "inf" for the identical-image PSNR.
std::string format_metric(double value);

struct JpegAttack {
  QualityTier tier = QualityTier::None;
};
struct JpegQualityAttack {
  int quality = 75;
};
struct BrightnessAttack {
  int offset = 0;  // -64..64, saturating
};
struct CropCenterAttack {
  double kept = 1.0;  // 0.5..1.0 of each side kept, the rest refilled with 128
};
struct ScaleAttack {
  double factor = 1.0;  // 0.5..2.0, bilinear there and back
};

struct AttackSpec {
  std::variant<JpegAttack, JpegQualityAttack, BrightnessAttack, CropCenterAttack,
               ScaleAttack>
      kind;

  // "jpeg:high", "jpeg-q:42", "brightness:+10", "crop:0.75", "scale:0.5".
  std::string label() const;
  // JPEG quality actually used, if any.
  std::optional<int> quality(const TierQualityMap& tiers) const;
  void validate() const;
};

AttackSpec parse_attack(std::string_view label);

Image apply_attack(const Image& img, const AttackSpec& spec,
                   const TierQualityMap& tiers = {});

// Bilinear resample with pixel-centre alignment and edge clamping.
Image resize_bilinear(const Image& img, std::size_t width, std::size_t height);

struct BenchImage {
  std::string name;
  Image cover;
};

struct BenchCell {
  std::string image;
  SchemeId scheme = SchemeId::SpatialDcQim;
  AttackSpec attack;
  std::size_t attack_index = 0;
  std::optional<int> quality;
  std::optional<ExtractionReport> report;   // empty when the cell failed
  double psnr_db = 0.0;                     // cover vs attacked marked image
  double embed_psnr_db = 0.0;               // cover vs marked image
  std::string error;
};

// Cells sorted by (scheme, image, attack position in the attack list).
struct BenchResult {
  std::vector<BenchCell> cells;

  const BenchCell* find(std::string_view image, SchemeId scheme,
                        std::size_t attack_index) const;
};

struct BenchOptions {
  TierQualityMap tiers;
};

BenchResult run_bench(const std::vector<BenchImage>& images,
                      const std::vector<SchemeId>& schemes,
                      const std::vector<AttackSpec>& attacks, const Watermark& wm,
                      const WatermarkKey& key, const BenchOptions& options = {});

// Header: image,scheme,attack,quality,ber,ncc,psnr_db. Failed cells carry
// "error" in the three metric columns.
std::string bench_csv(const BenchResult& result);
// One table per scheme: rows are attacks, columns are images.
std::string bench_markdown(const BenchResult& result);

}  // namespace docmark
