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
#include "docmark/watermark_gen.hpp"

#include <openssl/evp.h>

#include "docmark/error.hpp"

namespace docmark {

WatermarkDigest::Bytes sha256(std::span<const std::uint8_t> data) {
  WatermarkDigest::Bytes out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw io_error("SHA-256 computation failed");
  }
  return out;
}

std::string WatermarkDigest::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (auto b : bytes_) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

WatermarkDigest WatermarkDigest::from_hex(std::string_view hex) {
  if (hex.size() != 64) throw validation_error("digest must be 64 hex digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw validation_error(std::string("invalid hex digit '") + c + "' in digest");
  };
  Bytes bytes{};
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return WatermarkDigest(bytes);
}

std::string serialize_payload(const AuthorPayload& p) {
  std::string s;
  s.reserve(p.author_id.size() + p.doc_title.size() + p.context.size() + 2);
  s += p.author_id;
  s += '\x1F';
  s += p.doc_title;
  s += '\x1F';
  s += p.context;
  return s;
}

Watermark generate_context_watermark(const AuthorPayload& p) {
  if (p.author_id.empty()) throw validation_error("author_id must not be empty");
  const auto text = serialize_payload(p);
  const auto seed = sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});

  Watermark wm(kWatermarkSide, kWatermarkSide);
  const std::size_t total = wm.size();
  std::array<std::uint8_t, 36> input{};
  std::copy(seed.begin(), seed.end(), input.begin());
  std::size_t bit = 0;
  for (std::uint32_t counter = 0; bit < total; ++counter) {
    input[32] = static_cast<std::uint8_t>(counter >> 24);
    input[33] = static_cast<std::uint8_t>(counter >> 16);
    input[34] = static_cast<std::uint8_t>(counter >> 8);
    input[35] = static_cast<std::uint8_t>(counter);
    const auto block = sha256(input);
    for (std::size_t i = 0; i < block.size() * 8 && bit < total; ++i, ++bit) {
      wm.set_bit(bit, (block[i / 8] >> (7 - i % 8)) & 1);
    }
  }
  return wm;
}

Watermark binarize_logo(const Image& img) {
  if (img.width() != kWatermarkSide || img.height() != kWatermarkSide) {
    throw validation_error("logo must be exactly 64x64, got " + std::to_string(img.width()) +
                           "x" + std::to_string(img.height()));
  }
  Watermark wm(img.height(), img.width());
  for (std::size_t i = 0; i < img.size(); ++i) wm.set_bit(i, img.pixels()[i] >= 128);
  return wm;
}

WatermarkDigest watermark_digest(const Watermark& wm) {
  std::vector<std::uint8_t> packed((wm.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < wm.size(); ++i) {
    if (wm.bit(i)) packed[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return WatermarkDigest(sha256(packed));
}

}  // namespace docmark
