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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace docmark {

// 8-bit grayscale raster, row-major.
class Image {
 public:
  Image() = default;
  Image(std::size_t width, std::size_t height, std::uint8_t fill = 0)
      : width_(width), height_(height), pixels_(width * height, fill) {}
  // Throws a validation error when pixels.size() != width * height.
  Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t operator()(std::size_t row, std::size_t col) const {
    return pixels_[row * width_ + col];
  }
  std::uint8_t& operator()(std::size_t row, std::size_t col) {
    return pixels_[row * width_ + col];
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary matrix of {0,1}, row-major. Used both for the embedded watermark
// and for what comes back out of an extractor.
class Watermark {
 public:
  Watermark() = default;
  Watermark(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
  // Throws a validation error on a size mismatch or a value outside {0,1}.
  Watermark(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return bits_.size(); }

  std::uint8_t operator()(std::size_t row, std::size_t col) const {
    return bits_[row * cols_ + col];
  }
  // Callers must only store 0 or 1.
  std::uint8_t& operator()(std::size_t row, std::size_t col) {
    return bits_[row * cols_ + col];
  }
  std::uint8_t bit(std::size_t index) const { return bits_[index]; }
  void set_bit(std::size_t index, bool value) { bits_[index] = value ? 1 : 0; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t count_ones() const noexcept;

  friend bool operator==(const Watermark&, const Watermark&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline constexpr std::size_t kWatermarkSide = 64;
inline constexpr std::size_t kBlockSide = 8;

// Named compression levels, best first. None means "no recompression".
enum class QualityTier { None, Maximum, High, Medium, Low, Minimum };

inline constexpr QualityTier kAllTiers[] = {
    QualityTier::None, QualityTier::Maximum, QualityTier::High,
    QualityTier::Medium, QualityTier::Low, QualityTier::Minimum};

std::string_view tier_name(QualityTier tier);
// Accepts the lower-case names produced by tier_name.
QualityTier parse_tier(std::string_view name);

// Tier -> JPEG quality. Defaults: Maximum 90, High 75, Medium 50, Low 30,
// Minimum 10.
struct TierQualityMap {
  int maximum = 90;
  int high = 75;
  int medium = 50;
  int low = 30;
  int minimum = 10;

  // std::nullopt for QualityTier::None.
  std::optional<int> quality(QualityTier tier) const;
};

// Binary PGM (P5, maxval 255).
Image read_image(const std::filesystem::path& path);
void write_image(const Image& img, const std::filesystem::path& path);
Image decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const Image& img);

// ASCII PBM (P1). As in the PBM convention, 1 is a set (black) bit.
Watermark read_watermark(const std::filesystem::path& path);
void write_watermark(const Watermark& wm, const std::filesystem::path& path);
Watermark decode_pbm(std::string_view text);
std::string encode_pbm(const Watermark& wm);

// One baseline JPEG encode/decode cycle at quality 1..100. Deterministic
// (integer slow DCT on both sides).
Image jpeg_cycle(const Image& img, int quality);

// 0 -> 0 and 1 -> 255, the inverse of the logo binarization threshold.
Image render_watermark(const Watermark& wm);

}  // namespace docmark
