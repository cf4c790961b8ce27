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
#include "docmark/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "docmark/error.hpp"

namespace docmark {

Image::Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width_ * height_) {
    throw validation_error("image pixel count does not match width*height");
  }
}

Watermark::Watermark(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
  if (bits_.size() != rows_ * cols_) {
    throw validation_error("watermark dimension mismatch");
  }
  for (auto b : bits_) {
    if (b > 1) throw validation_error("watermark bit outside {0,1}");
  }
}

std::size_t Watermark::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string_view tier_name(QualityTier tier) {
  switch (tier) {
    case QualityTier::None: return "none";
    case QualityTier::Maximum: return "maximum";
    case QualityTier::High: return "high";
    case QualityTier::Medium: return "medium";
    case QualityTier::Low: return "low";
    case QualityTier::Minimum: return "minimum";
  }
  return "none";
}

QualityTier parse_tier(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto t : kAllTiers) {
    if (tier_name(t) == lower) return t;
  }
  throw validation_error("unknown quality tier '" + std::string(name) + "'");
}

std::optional<int> TierQualityMap::quality(QualityTier tier) const {
  switch (tier) {
    case QualityTier::None: return std::nullopt;
    case QualityTier::Maximum: return maximum;
    case QualityTier::High: return high;
    case QualityTier::Medium: return medium;
    case QualityTier::Low: return low;
    case QualityTier::Minimum: return minimum;
  }
  return std::nullopt;
}

namespace {

// Netpbm header tokenizer: whitespace-separated tokens, '#' to end of line is
// a comment.
class HeaderReader {
 public:
  HeaderReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < size_ && !std::isspace(data_[pos_]) && data_[pos_] != '#') {
      out.push_back(static_cast<char>(data_[pos_++]));
    }
    return out;
  }

  std::size_t number(const char* what) {
    auto t = token();
    if (t.empty() || !std::all_of(t.begin(), t.end(),
                                  [](unsigned char c) { return std::isdigit(c); })) {
      throw validation_error(std::string("malformed header: bad ") + what);
    }
    if (t.size() > 9) throw validation_error(std::string("malformed header: ") + what + " too large");
    return static_cast<std::size_t>(std::stoul(t));
  }

  // Consumes exactly one whitespace byte, as required before a P5 raster.
  void single_space() {
    if (pos_ >= size_ || !std::isspace(data_[pos_])) {
      throw validation_error("malformed header: missing separator before raster");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < size_) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < size_ && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= size_; }
  std::uint8_t peek() const { return data_[pos_]; }
  void advance() { ++pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write '" + path.string() + "'");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw io_error("write failed for '" + path.string() + "'");
}

}  // namespace

Image decode_pgm(std::span<const std::uint8_t> bytes) {
  HeaderReader rd(bytes.data(), bytes.size());
  const auto magic = rd.token();
  if (magic == "P2") throw validation_error("unsupported PGM variant (ASCII P2)");
  if (magic == "P3" || magic == "P6") {
    throw validation_error("color images are not supported; convert to grayscale PGM");
  }
  if (magic != "P5") throw validation_error("malformed header: not a binary PGM (P5)");
  const auto width = rd.number("width");
  const auto height = rd.number("height");
  const auto maxval = rd.number("maxval");
  if (maxval != 255) throw validation_error("unsupported maxval (only 255)");
  rd.single_space();
  const std::size_t need = width * height;
  if (need == 0) throw validation_error("empty image");
  if (bytes.size() - rd.pos() < need) {
    throw validation_error("payload shorter than width×height");
  }
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(rd.pos());
  return Image(width, height, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(need)));
}

std::vector<std::uint8_t> encode_pgm(const Image& img) {
  if (img.empty()) throw validation_error("empty image");
  std::string header = "P5\n" + std::to_string(img.width()) + " " +
                       std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

Image read_image(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  try {
    return decode_pgm(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_image(const Image& img, const std::filesystem::path& path) {
  const auto bytes = encode_pgm(img);
  spill(path, bytes.data(), bytes.size());
}

Watermark decode_pbm(std::string_view text) {
  const auto* data = reinterpret_cast<const std::uint8_t*>(text.data());
  HeaderReader rd(data, text.size());
  const auto magic = rd.token();
  if (magic == "P4") throw validation_error("unsupported PBM variant (binary P4)");
  if (magic != "P1") throw validation_error("malformed header: not an ASCII PBM (P1)");
  const auto cols = rd.number("width");
  const auto rows = rd.number("height");
  std::vector<std::uint8_t> bits;
  bits.reserve(rows * cols);
  while (true) {
    rd.skip_space_and_comments();
    if (rd.at_end()) break;
    const auto c = rd.peek();
    if (c != '0' && c != '1') {
      throw validation_error(std::string("non-binary digit '") + static_cast<char>(c) +
                             "' in PBM payload");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
    rd.advance();
  }
  if (bits.size() != rows * cols) {
    throw validation_error("dimension mismatch: header says " + std::to_string(rows * cols) +
                           " bits, payload has " + std::to_string(bits.size()));
  }
  return Watermark(rows, cols, std::move(bits));
}

std::string encode_pbm(const Watermark& wm) {
  if (wm.size() == 0) throw validation_error("empty watermark");
  std::ostringstream out;
  out << "P1\n" << wm.cols() << ' ' << wm.rows() << '\n';
  for (std::size_t r = 0; r < wm.rows(); ++r) {
    for (std::size_t c = 0; c < wm.cols(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(wm(r, c));
    }
    out << '\n';
  }
  return out.str();
}

Watermark read_watermark(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  try {
    return decode_pbm(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_watermark(const Watermark& wm, const std::filesystem::path& path) {
  const auto text = encode_pbm(wm);
  spill(path, text.data(), text.size());
}

Image render_watermark(const Watermark& wm) {
  Image img(wm.cols(), wm.rows());
  for (std::size_t i = 0; i < wm.size(); ++i) img.pixels()[i] = wm.bit(i) ? 255 : 0;
  return img;
}

}  // namespace docmark
