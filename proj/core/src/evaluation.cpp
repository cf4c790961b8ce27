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

#include "docmark/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "docmark/error.hpp"

namespace docmark {
namespace {

void require_same_shape(const Watermark& a, const Watermark& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw validation_error("watermark dimension mismatch");
  }
}

}  // namespace

std::size_t bit_errors(const Watermark& original, const Watermark& extracted) {
  require_same_shape(original, extracted);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < original.size(); ++i) errors += original.bit(i) != extracted.bit(i);
  return errors;
}

double ber(const Watermark& original, const Watermark& extracted) {
  const auto errors = bit_errors(original, extracted);
  if (original.size() == 0) return 0.0;
  return static_cast<double>(errors) / static_cast<double>(original.size());
}

bool ncc_degenerate(const Watermark& original, const Watermark& extracted) {
  require_same_shape(original, extracted);
  return original.count_ones() == 0 || extracted.count_ones() == 0;
}

double ncc(const Watermark& original, const Watermark& extracted) {
  if (ncc_degenerate(original, extracted)) return 0.0;
  // Binary operands: W^2 == W, so the sums reduce to bit counts.
  std::size_t both = 0;
  for (std::size_t i = 0; i < original.size(); ++i) both += original.bit(i) & extracted.bit(i);
  return static_cast<double>(both) /
         (std::sqrt(static_cast<double>(original.count_ones())) *
          std::sqrt(static_cast<double>(extracted.count_ones())));
}

double psnr(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw validation_error("image dimension mismatch");
  }
  if (a.empty()) throw validation_error("empty image");
  double sse = 0.0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - static_cast<double>(pb[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(pa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

ExtractionReport make_report(const Watermark& original, Watermark extracted) {
  ExtractionReport r;
  r.total_bits = original.size();
  r.error_bits = bit_errors(original, extracted);
  r.ber = original.size() ? static_cast<double>(r.error_bits) / static_cast<double>(r.total_bits)
                          : 0.0;
  if (ncc_degenerate(original, extracted)) {
    r.warnings.emplace_back("degenerate NCC: an operand has no set bit");
  }
  r.ncc = ncc(original, extracted);
  r.wm_extracted = std::move(extracted);
  return r;
}

std::string format_metric(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

// --- attacks -------------------------------------------------------------------

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw validation_error("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto* first = s.data();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw validation_error("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string AttackSpec::label() const {
  return std::visit(
      Overloaded{
          [](const JpegAttack& a) { return "jpeg:" + std::string(tier_name(a.tier)); },
          [](const JpegQualityAttack& a) { return "jpeg-q:" + std::to_string(a.quality); },
          [](const BrightnessAttack& a) {
            return std::string("brightness:") + (a.offset >= 0 ? "+" : "") +
                   std::to_string(a.offset);
          },
          [](const CropCenterAttack& a) { return "crop:" + trim_number(a.kept); },
          [](const ScaleAttack& a) { return "scale:" + trim_number(a.factor); },
      },
      kind);
}

std::optional<int> AttackSpec::quality(const TierQualityMap& tiers) const {
  if (const auto* j = std::get_if<JpegAttack>(&kind)) return tiers.quality(j->tier);
  if (const auto* q = std::get_if<JpegQualityAttack>(&kind)) return q->quality;
  return std::nullopt;
}

void AttackSpec::validate() const {
  std::visit(Overloaded{
                 [](const JpegAttack&) {},
                 [](const JpegQualityAttack& a) {
                   if (a.quality < 1 || a.quality > 100) {
                     throw validation_error("jpeg quality outside [1,100]");
                   }
                 },
                 [](const BrightnessAttack& a) {
                   if (a.offset < -64 || a.offset > 64) {
                     throw validation_error("brightness offset outside [-64,64]");
                   }
                 },
                 [](const CropCenterAttack& a) {
                   if (!(a.kept >= 0.5 && a.kept <= 1.0)) {
                     throw validation_error("crop fraction outside [0.5,1.0]");
                   }
                 },
                 [](const ScaleAttack& a) {
                   if (!(a.factor >= 0.5 && a.factor <= 2.0)) {
                     throw validation_error("scale factor outside [0.5,2.0]");
                   }
                 },
             },
             kind);
}

AttackSpec parse_attack(std::string_view label) {
  const auto colon = label.find(':');
  if (colon == std::string_view::npos) {
    // Bare tier names are accepted as JPEG tiers.
    return AttackSpec{JpegAttack{parse_tier(label)}};
  }
  const auto kind = label.substr(0, colon);
  const auto arg = label.substr(colon + 1);
  AttackSpec spec;
  if (kind == "jpeg") {
    spec.kind = JpegAttack{parse_tier(arg)};
  } else if (kind == "jpeg-q") {
    spec.kind = JpegQualityAttack{parse_int(arg, "jpeg quality")};
  } else if (kind == "brightness") {
    spec.kind = BrightnessAttack{parse_int(arg, "brightness offset")};
  } else if (kind == "crop") {
    spec.kind = CropCenterAttack{parse_double(arg, "crop fraction")};
  } else if (kind == "scale") {
    spec.kind = ScaleAttack{parse_double(arg, "scale factor")};
  } else {
    throw validation_error("unknown attack '" + std::string(label) + "'");
  }
  spec.validate();
  return spec;
}

Image resize_bilinear(const Image& img, std::size_t width, std::size_t height) {
  if (img.empty() || width == 0 || height == 0) throw validation_error("empty resize");
  Image out(width, height);
  const double sx = static_cast<double>(img.width()) / static_cast<double>(width);
  const double sy = static_cast<double>(img.height()) / static_cast<double>(height);
  const auto max_x = static_cast<double>(img.width() - 1);
  const auto max_y = static_cast<double>(img.height() - 1);
  for (std::size_t y = 0; y < height; ++y) {
    const double fy = std::clamp((static_cast<double>(y) + 0.5) * sy - 0.5, 0.0, max_y);
    const auto y0 = static_cast<std::size_t>(fy);
    const auto y1 = std::min(y0 + 1, img.height() - 1);
    const double wy = fy - static_cast<double>(y0);
    for (std::size_t x = 0; x < width; ++x) {
      const double fx = std::clamp((static_cast<double>(x) + 0.5) * sx - 0.5, 0.0, max_x);
      const auto x0 = static_cast<std::size_t>(fx);
      const auto x1 = std::min(x0 + 1, img.width() - 1);
      const double wx = fx - static_cast<double>(x0);
      const double top = img(y0, x0) * (1.0 - wx) + img(y0, x1) * wx;
      const double bottom = img(y1, x0) * (1.0 - wx) + img(y1, x1) * wx;
      const double v = top * (1.0 - wy) + bottom * wy;
      out(y, x) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

Image apply_attack(const Image& img, const AttackSpec& spec, const TierQualityMap& tiers) {
  spec.validate();
  return std::visit(
      Overloaded{
          [&](const JpegAttack& a) {
            const auto q = tiers.quality(a.tier);
            return q ? jpeg_cycle(img, *q) : img;
          },
          [&](const JpegQualityAttack& a) { return jpeg_cycle(img, a.quality); },
          [&](const BrightnessAttack& a) {
            Image out = img;
            for (auto& p : out.pixels()) p = static_cast<std::uint8_t>(std::clamp(p + a.offset, 0, 255));
            return out;
          },
          [&](const CropCenterAttack& a) {
            const auto kw = static_cast<std::size_t>(std::lround(a.kept * static_cast<double>(img.width())));
            const auto kh = static_cast<std::size_t>(std::lround(a.kept * static_cast<double>(img.height())));
            const std::size_t x0 = (img.width() - kw) / 2;
            const std::size_t y0 = (img.height() - kh) / 2;
            Image out(img.width(), img.height(), 128);
            for (std::size_t y = y0; y < y0 + kh; ++y)
              for (std::size_t x = x0; x < x0 + kw; ++x) out(y, x) = img(y, x);
            return out;
          },
          [&](const ScaleAttack& a) {
            const auto w = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(a.factor * static_cast<double>(img.width()))));
            const auto h = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(a.factor * static_cast<double>(img.height()))));
            if (w == img.width() && h == img.height()) return img;
            return resize_bilinear(resize_bilinear(img, w, h), img.width(), img.height());
          },
      },
      spec.kind);
}

}  // namespace docmark
