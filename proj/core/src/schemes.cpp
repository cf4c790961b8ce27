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
#include "docmark/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "docmark/error.hpp"

namespace docmark {

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::SpatialDcQim: return "spatial-dc-qim";
    case SchemeId::DctInterBlockDiff: return "dct-interblock-diff";
    case SchemeId::HybridDctDwt: return "hybrid-dct-dwt";
  }
  return "spatial-dc-qim";
}

SchemeId parse_scheme(std::string_view name) {
  for (auto id : kAllSchemes) {
    if (scheme_name(id) == name) return id;
  }
  if (name == "spatial" || name == "SpatialDcQim") return SchemeId::SpatialDcQim;
  if (name == "dct" || name == "DctInterBlockDiff") return SchemeId::DctInterBlockDiff;
  if (name == "hybrid" || name == "HybridDctDwt") return SchemeId::HybridDctDwt;
  throw validation_error("unknown scheme '" + std::string(name) + "'");
}

bool is_blind(SchemeId id) { return id != SchemeId::HybridDctDwt; }

void WatermarkKey::validate() const {
  if (scramble.arnold_iterations < 1) throw validation_error("arnold_iterations must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw validation_error("delta must be > 0");
  if (!(t_interval > 0.0) || !std::isfinite(t_interval)) {
    throw validation_error("t_interval must be > 0");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw validation_error("alpha must be in (0, 1]");
}

void check_capacity(const Image& cover, const Watermark& wm) {
  if (cover.empty()) throw validation_error("empty cover image");
  if (wm.size() == 0) throw validation_error("empty watermark");
  if (cover.width() % kBlockSide != 0 || cover.height() % kBlockSide != 0 ||
      cover.width() < kBlockSide || cover.height() < kBlockSide) {
    throw validation_error("cover dimensions must be positive multiples of 8, got " +
                           std::to_string(cover.width()) + "x" + std::to_string(cover.height()));
  }
  const std::size_t blocks = (cover.width() / kBlockSide) * (cover.height() / kBlockSide);
  if (blocks < wm.size()) {
    throw validation_error("capacity: " + std::to_string(blocks) + " blocks cannot carry " +
                           std::to_string(wm.size()) + " watermark bits");
  }
}

namespace qim {
namespace {

int parity(double cell) {
  const auto k = static_cast<long long>(cell);
  return static_cast<int>(((k % 2) + 2) % 2);
}

}  // namespace

int decode_bit(double mean, double delta) { return parity(std::floor(mean / delta)); }

double target_mean(double mean, double delta, int bit) {
  const double k = std::floor(mean / delta);
  if (parity(k) == bit) return std::clamp(delta * (k + 0.5), 0.0, 255.0);
  const double below = delta * (k - 0.5);
  const double above = delta * (k + 1.5);
  const bool prefer_below = std::abs(mean - below) <= std::abs(above - mean);
  const double first = std::clamp(prefer_below ? below : above, 0.0, 255.0);
  if (decode_bit(first, delta) == bit) return first;
  return std::clamp(prefer_below ? above : below, 0.0, 255.0);
}

int decode_difference(double diff, double t) { return parity(std::floor(diff / (2.0 * t))); }

double target_difference(double diff, double t, int bit) {
  const double width = 2.0 * t;
  const double k = std::floor(diff / width);
  if (parity(k) == bit) return width * (k + 0.5);
  const double below = width * (k - 0.5);
  const double above = width * (k + 1.5);
  return std::abs(diff - below) <= std::abs(above - diff) ? below : above;
}

}  // namespace qim

namespace {

using transforms::Block8;

struct Layout {
  std::size_t blocks_x = 0;
  std::vector<std::size_t> order;   // bit i lives in block order[i]
};

Layout block_layout(const Image& img, const Watermark& wm, std::uint64_t seed) {
  Layout l;
  l.blocks_x = img.width() / kBlockSide;
  const std::size_t blocks = l.blocks_x * (img.height() / kBlockSide);
  l.order = transforms::keyed_permutation(blocks, seed);
  l.order.resize(wm.size());
  return l;
}

Block8 load_block(const Image& img, std::size_t blocks_x, std::size_t index) {
  Block8 b{};
  const std::size_t r0 = (index / blocks_x) * kBlockSide;
  const std::size_t c0 = (index % blocks_x) * kBlockSide;
  for (std::size_t r = 0; r < kBlockSide; ++r)
    for (std::size_t c = 0; c < kBlockSide; ++c) b[r * 8 + c] = img(r0 + r, c0 + c);
  return b;
}

// Adds total grey levels, spread over the block's pixels, skipping pixels
// that already sit at the bound in the direction of travel. Returns the
// amount that could not be placed.
long shift_block(Image& img, std::size_t blocks_x, std::size_t index, long total) {
  const std::size_t r0 = (index / blocks_x) * kBlockSide;
  const std::size_t c0 = (index % blocks_x) * kBlockSide;
  std::array<std::uint8_t*, 64> px{};
  for (std::size_t r = 0; r < kBlockSide; ++r)
    for (std::size_t c = 0; c < kBlockSide; ++c) px[r * 8 + c] = &img(r0 + r, c0 + c);

  while (total != 0) {
    const int dir = total > 0 ? 1 : -1;
    const int bound = dir > 0 ? 255 : 0;
    std::size_t movable = 0;
    for (auto* p : px) movable += (*p != bound);
    if (movable == 0) break;
    const long each = std::abs(total) / static_cast<long>(movable);
    long left = std::abs(total) % static_cast<long>(movable);
    long placed = 0;
    for (auto* p : px) {
      if (*p == bound) continue;
      long want = each + (left > 0 ? 1 : 0);
      if (left > 0) --left;
      if (want == 0) continue;
      const long room = dir > 0 ? 255 - *p : *p;
      const long step = std::min(want, room);
      *p = static_cast<std::uint8_t>(*p + dir * step);
      placed += step;
    }
    if (placed == 0) break;
    total -= dir * placed;
  }
  return total;
}

double block_sum(const Image& img, std::size_t blocks_x, std::size_t index) {
  const auto b = load_block(img, blocks_x, index);
  double s = 0.0;
  for (double v : b) s += v;
  return s;
}

// --- spatial QIM on the block mean -------------------------------------------

MarkedImage embed_spatial(const Image& cover, const Watermark& wm, const WatermarkKey& key) {
  const auto scrambled = transforms::arnold(wm, key.scramble.arnold_iterations);
  const auto layout = block_layout(cover, wm, key.scramble.permutation_seed);
  MarkedImage out{cover, SchemeId::SpatialDcQim, {}, {}};
  std::size_t saturated = 0;
  for (std::size_t i = 0; i < layout.order.size(); ++i) {
    const auto block = layout.order[i];
    const double sum = block_sum(out.image, layout.blocks_x, block);
    const double target = qim::target_mean(sum / 64.0, key.delta, scrambled.bit(i));
    const long total = std::lround(target * 64.0 - sum);
    if (shift_block(out.image, layout.blocks_x, block, total) != 0) ++saturated;
  }
  if (saturated) {
    out.warnings.push_back(std::to_string(saturated) +
                           " saturated blocks could not reach their QIM target");
  }
  return out;
}

Watermark extract_spatial(const Image& suspect, const WatermarkKey& key, std::size_t rows,
                          std::size_t cols) {
  Watermark scrambled(rows, cols);
  const auto layout = block_layout(suspect, scrambled, key.scramble.permutation_seed);
  for (std::size_t i = 0; i < layout.order.size(); ++i) {
    const double mean = block_sum(suspect, layout.blocks_x, layout.order[i]) / 64.0;
    scrambled.set_bit(i, qim::decode_bit(mean, key.delta) == 1);
  }
  return transforms::arnold_inverse(scrambled, key.scramble.arnold_iterations);
}

// --- inter-block DCT coefficient difference ----------------------------------

std::size_t mid_frequency_slot() {
  const auto [r, c] = transforms::zigzag_position(kMidFrequencyZigzag);
  return static_cast<std::size_t>(r * 8 + c);
}

// Blocks whose rounded and clamped pixels miss the coefficient target by more
// than this are re-projected.
constexpr double kCoefficientTolerance = 1.0;
constexpr int kProjectionRounds = 24;
// Number of trailing differences that absorb the cyclic closure.
constexpr std::size_t kClosureSpan = 8;

MarkedImage embed_interblock(const Image& cover, const Watermark& wm, const WatermarkKey& key) {
  const auto scrambled = transforms::arnold(wm, key.scramble.arnold_iterations);
  const auto layout = block_layout(cover, wm, key.scramble.permutation_seed);
  const std::size_t n = layout.order.size();
  const std::size_t slot = mid_frequency_slot();
  const double t = key.t_interval;

  std::vector<Block8> coeffs(n);
  std::vector<double> orig(n);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs[i] = transforms::dct2_block(load_block(cover, layout.blocks_x, layout.order[i]));
    orig[i] = coeffs[i][slot];
  }

  // Walk the keyed chain, placing each successor so that d_i = C_i - C_{i+1}
  // sits at the centre of the nearest interval with the right label. Each
  // successor moves at most 2t from its original value.
  std::vector<double> target = orig;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = qim::target_difference(target[i] - orig[i + 1], t, scrambled.bit(i));
    target[i + 1] = target[i] - d;
  }
  // The last difference wraps to block 0. Its correction is spread over the
  // preceding kClosureSpan differences so none leaves its interval.
  if (n >= 2) {
    const std::size_t span = std::min(kClosureSpan, n - 1);
    const double last = target[n - 1] - target[0];
    const double fix = qim::target_difference(last, t, scrambled.bit(n - 1)) - last;
    for (std::size_t j = 1; j <= span; ++j) {
      target[n - 1 - span + j] += static_cast<double>(j) * fix / static_cast<double>(span);
    }
  }

  MarkedImage out{cover, SchemeId::DctInterBlockDiff, {}, {}};
  std::size_t unreachable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    coeffs[i][slot] = target[i];
    Block8 spatial = transforms::idct2_block(coeffs[i]);
    Block8 basis{};
    basis[slot] = 1.0;
    const Block8 unit = transforms::idct2_block(basis);

    Block8 pixels{};
    double realized = 0.0;
    for (int round = 0; round < kProjectionRounds; ++round) {
      for (int k = 0; k < 64; ++k) pixels[k] = std::clamp(std::round(spatial[k]), 0.0, 255.0);
      realized = transforms::dct2_block(pixels)[slot];
      const double miss = target[i] - realized;
      if (std::abs(miss) <= kCoefficientTolerance) break;
      for (int k = 0; k < 64; ++k) spatial[k] += miss * unit[k];
    }
    if (std::abs(target[i] - realized) > t / 2.0) ++unreachable;

    const auto index = layout.order[i];
    const std::size_t r0 = (index / layout.blocks_x) * kBlockSide;
    const std::size_t c0 = (index % layout.blocks_x) * kBlockSide;
    for (std::size_t r = 0; r < kBlockSide; ++r)
      for (std::size_t c = 0; c < kBlockSide; ++c)
        out.image(r0 + r, c0 + c) = static_cast<std::uint8_t>(pixels[r * 8 + c]);
  }
  if (unreachable) {
    out.warnings.push_back(std::to_string(unreachable) +
                           " clipped blocks missed their coefficient target");
  }
  return out;
}

Watermark extract_interblock(const Image& suspect, const WatermarkKey& key, std::size_t rows,
                             std::size_t cols) {
  Watermark scrambled(rows, cols);
  const auto layout = block_layout(suspect, scrambled, key.scramble.permutation_seed);
  const std::size_t n = layout.order.size();
  const std::size_t slot = mid_frequency_slot();
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = transforms::dct2_block(load_block(suspect, layout.blocks_x, layout.order[i]))[slot];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double d = c[i] - c[(i + 1) % n];
    scrambled.set_bit(i, qim::decode_difference(d, key.t_interval) == 1);
  }
  return transforms::arnold_inverse(scrambled, key.scramble.arnold_iterations);
}

// --- hybrid DCT + Haar DWT (non-blind) ---------------------------------------
//
// Only the top-left h x w region of each sub-band carries the watermark. With
// one Haar level over the full-image DCT, those four regions are exactly the
// Haar bands of the top-left 2h x 2w corner of the DCT, so only that corner
// is ever computed.

constexpr int kHybridRefinements = 40;

// The scrambled watermark is permuted with the key, then split into four
// quadrant fragments; fragment q goes to sub-band q (LL, LH, HL, HH).
Watermark hybrid_layout(const Watermark& wm, const WatermarkKey& key) {
  const auto scrambled = transforms::arnold(wm, key.scramble.arnold_iterations);
  const auto perm = transforms::keyed_permutation(wm.size(), key.scramble.permutation_seed);
  Watermark laid(wm.rows(), wm.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) laid.set_bit(i, scrambled.bit(perm[i]));
  return laid;
}

Watermark hybrid_unlayout(const Watermark& laid, const WatermarkKey& key) {
  const auto perm = transforms::keyed_permutation(laid.size(), key.scramble.permutation_seed);
  Watermark scrambled(laid.rows(), laid.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) scrambled.set_bit(perm[i], laid.bit(i));
  return transforms::arnold_inverse(scrambled, key.scramble.arnold_iterations);
}

RealMatrix fragment(const Watermark& laid, std::size_t quadrant) {
  const std::size_t h = laid.rows() / 2, w = laid.cols() / 2;
  const std::size_t r0 = (quadrant / 2) * h, c0 = (quadrant % 2) * w;
  RealMatrix f(h, w);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) f(r, c) = laid(r0 + r, c0 + c);
  return f;
}

// Embedding regions of the four sub-bands.
transforms::SubBands analyze(const Image& img, std::size_t h, std::size_t w) {
  return transforms::haar_dwt(transforms::dct2_corner(RealMatrix::from_image(img), 2 * h, 2 * w));
}

RealMatrix synthesize(const transforms::SubBands& regions, std::size_t rows, std::size_t cols) {
  return transforms::idct2_corner(transforms::haar_idwt(regions), rows, cols);
}

void require_even_watermark(const Watermark& wm) {
  if (wm.rows() % 2 != 0 || wm.cols() % 2 != 0) {
    throw validation_error("hybrid scheme needs even watermark dimensions");
  }
}

// alpha * sigma per band; 0 marks a constant (degenerate) band.
std::array<double, 4> band_strength(const transforms::SubBands& cover, double alpha) {
  std::array<double, 4> s{};
  for (std::size_t q = 0; q < 4; ++q) s[q] = alpha * stddev(cover.band(q));
  return s;
}

Watermark decode_laid(const transforms::SubBands& cover, const transforms::SubBands& suspect,
                      const std::array<double, 4>& strength, std::size_t rows, std::size_t cols) {
  const std::size_t h = rows / 2, w = cols / 2;
  Watermark laid(rows, cols);
  for (std::size_t q = 0; q < 4; ++q) {
    if (strength[q] == 0.0) continue;
    RealMatrix f(h, w);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.data()[i] = (suspect.band(q).data()[i] - cover.band(q).data()[i]) / strength[q];
    }
    const auto spatial = transforms::idct2(f);
    const std::size_t r0 = (q / 2) * h, c0 = (q % 2) * w;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) laid(r0 + r, c0 + c) = spatial(r, c) > 0.5 ? 1 : 0;
  }
  return laid;
}

MarkedImage embed_hybrid(const Image& cover, const Watermark& wm, const WatermarkKey& key) {
  require_even_watermark(wm);
  const std::size_t h = wm.rows() / 2, w = wm.cols() / 2;
  const auto laid = hybrid_layout(wm, key);
  const auto cover_bands = analyze(cover, h, w);
  const auto strength = band_strength(cover_bands, key.alpha);

  MarkedImage out{{}, SchemeId::HybridDctDwt, {}, {}};
  auto target = cover_bands;
  auto added = transforms::SubBands{RealMatrix(h, w), RealMatrix(h, w), RealMatrix(h, w),
                                    RealMatrix(h, w)};
  for (std::size_t q = 0; q < 4; ++q) {
    if (strength[q] == 0.0) {
      out.warnings.push_back("sub-band " + std::to_string(q) +
                             " is constant; its fragment cannot be embedded");
      continue;
    }
    const auto f = transforms::dct2(fragment(laid, q));
    for (std::size_t i = 0; i < f.size(); ++i) {
      added.band(q).data()[i] = strength[q] * f.data()[i];
      target.band(q).data()[i] += added.band(q).data()[i];
    }
  }

  auto marked = RealMatrix::from_image(cover);
  const auto delta = synthesize(added, cover.height(), cover.width());
  for (std::size_t i = 0; i < marked.size(); ++i) marked.data()[i] += delta.data()[i];
  out.image = marked.to_image();

  // Rounding and clipping perturb the embedded regions. Feed the residual
  // back until the marked image decodes to the embedded bits.
  bool exact = false;
  for (int round = 0; round < kHybridRefinements; ++round) {
    const auto realized = analyze(out.image, h, w);
    if (decode_laid(cover_bands, realized, strength, wm.rows(), wm.cols()) == laid) {
      exact = true;
      break;
    }
    auto miss = target;
    for (std::size_t q = 0; q < 4; ++q) {
      for (std::size_t i = 0; i < miss.band(q).size(); ++i) {
        miss.band(q).data()[i] -= realized.band(q).data()[i];
      }
    }
    const auto correction = synthesize(miss, cover.height(), cover.width());
    for (std::size_t i = 0; i < marked.size(); ++i) marked.data()[i] += correction.data()[i];
    out.image = marked.to_image();
  }
  if (!exact &&
      decode_laid(cover_bands, analyze(out.image, h, w), strength, wm.rows(), wm.cols()) != laid) {
    out.warnings.emplace_back("clipping leaves some hybrid bits unrecoverable");
  }
  return out;
}

Watermark extract_hybrid(const Image& suspect, const Image& cover, const WatermarkKey& key,
                         std::size_t rows, std::size_t cols) {
  require_even_watermark(Watermark(rows, cols));
  const std::size_t h = rows / 2, w = cols / 2;
  const auto cover_bands = analyze(cover, h, w);
  const auto suspect_bands = analyze(suspect, h, w);
  const auto strength = band_strength(cover_bands, key.alpha);
  return hybrid_unlayout(decode_laid(cover_bands, suspect_bands, strength, rows, cols), key);
}

}  // namespace

MarkedImage embed(SchemeId scheme, const Image& cover, const Watermark& wm,
                  const WatermarkKey& key) {
  key.validate();
  check_capacity(cover, wm);
  if (wm.rows() != wm.cols()) throw validation_error("watermark must be square");
  MarkedImage out;
  switch (scheme) {
    case SchemeId::SpatialDcQim: out = embed_spatial(cover, wm, key); break;
    case SchemeId::DctInterBlockDiff: out = embed_interblock(cover, wm, key); break;
    case SchemeId::HybridDctDwt: out = embed_hybrid(cover, wm, key); break;
  }
  out.scheme = scheme;
  out.wm_digest = watermark_digest(wm);
  return out;
}

Watermark extract(SchemeId scheme, const Image& suspect, const WatermarkKey& key,
                  const Image* cover, std::size_t wm_rows, std::size_t wm_cols) {
  key.validate();
  check_capacity(suspect, Watermark(wm_rows, wm_cols));
  if (wm_rows != wm_cols) throw validation_error("watermark must be square");
  if (is_blind(scheme) && cover != nullptr) {
    throw validation_error(std::string(scheme_name(scheme)) +
                           " is blind; a cover image must not be supplied");
  }
  switch (scheme) {
    case SchemeId::SpatialDcQim: return extract_spatial(suspect, key, wm_rows, wm_cols);
    case SchemeId::DctInterBlockDiff: return extract_interblock(suspect, key, wm_rows, wm_cols);
    case SchemeId::HybridDctDwt:
      if (cover == nullptr) {
        throw validation_error("hybrid-dct-dwt is non-blind: the cover image is required");
      }
      if (cover->width() != suspect.width() || cover->height() != suspect.height()) {
        throw validation_error("dimension mismatch between suspect and cover");
      }
      return extract_hybrid(suspect, *cover, key, wm_rows, wm_cols);
  }
  throw validation_error("unknown scheme");
}

}  // namespace docmark
