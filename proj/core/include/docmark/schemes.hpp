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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docmark/imaging.hpp"
#include "docmark/transforms.hpp"
#include "docmark/watermark_gen.hpp"

namespace docmark {

enum class SchemeId {
  // Blind. QIM of the 8x8 block mean, keyed block order.
  SpatialDcQim,
  // Blind. Interval coding of the difference of one mid-frequency DCT
  // coefficient between consecutive blocks of the keyed order.
  DctInterBlockDiff,
  // Non-blind. Additive embedding of DCT'd watermark quadrants into the four
  // Haar sub-bands of the full-image DCT.
  HybridDctDwt,
};

inline constexpr SchemeId kAllSchemes[] = {
    SchemeId::SpatialDcQim, SchemeId::DctInterBlockDiff, SchemeId::HybridDctDwt};

// "spatial-dc-qim", "dct-interblock-diff", "hybrid-dct-dwt".
std::string_view scheme_name(SchemeId id);
SchemeId parse_scheme(std::string_view name);
bool is_blind(SchemeId id);

struct WatermarkKey {
  transforms::ScrambleKey scramble;
  double delta = 6.5;         // QIM step on the block mean
  double t_interval = 28.0;   // half-width of one difference interval
  double alpha = 0.035;       // hybrid strength, relative to band spread

  // Throws a validation error when a parameter is out of range.
  void validate() const;
};

struct MarkedImage {
  Image image;
  SchemeId scheme = SchemeId::SpatialDcQim;
  WatermarkDigest wm_digest;
  std::vector<std::string> warnings;
};

// Capacity for the block-based layout: (w/8)*(h/8) >= rows*cols, dimensions
// multiples of 8. Throws a validation error naming "capacity" or the offending
// dimension.
void check_capacity(const Image& cover, const Watermark& wm);

MarkedImage embed(SchemeId scheme, const Image& cover, const Watermark& wm,
                  const WatermarkKey& key);

// Always returns a watermark estimate. The cover must be supplied for the
// non-blind scheme and must be absent for the blind ones.
Watermark extract(SchemeId scheme, const Image& suspect, const WatermarkKey& key,
                  const Image* cover = nullptr, std::size_t wm_rows = kWatermarkSide,
                  std::size_t wm_cols = kWatermarkSide);

namespace qim {

// Target block mean for the spatial scheme: centre of the nearest cell of
// width delta whose index parity equals bit, restricted to [0, 255].
double target_mean(double mean, double delta, int bit);
int decode_bit(double mean, double delta);

// Target coefficient difference for the inter-block scheme: centre of the
// nearest interval of width 2*t whose index parity equals bit.
double target_difference(double diff, double t, int bit);
int decode_difference(double diff, double t);

}  // namespace qim

// Zigzag index of the coefficient the inter-block scheme modulates.
inline constexpr int kMidFrequencyZigzag = 14;

}  // namespace docmark
