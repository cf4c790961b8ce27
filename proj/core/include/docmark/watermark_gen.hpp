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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "docmark/imaging.hpp"

namespace docmark {

// Identity of the author plus the document context an image is bound to.
// An empty context gives the context-free mode: the watermark depends on
// author and title only.
struct AuthorPayload {
  std::string author_id;
  std::string doc_title;
  std::string context;
};

inline constexpr std::string_view kHashName = "SHA-256";

class WatermarkDigest {
 public:
  using Bytes = std::array<std::uint8_t, 32>;

  WatermarkDigest() = default;
  explicit WatermarkDigest(const Bytes& bytes) : bytes_(bytes) {}

  const Bytes& bytes() const noexcept { return bytes_; }
  // 64 lower-case hex digits.
  std::string hex() const;
  static WatermarkDigest from_hex(std::string_view hex);

  friend bool operator==(const WatermarkDigest&, const WatermarkDigest&) = default;

 private:
  Bytes bytes_{};
};

WatermarkDigest::Bytes sha256(std::span<const std::uint8_t> data);

// author_id 0x1F doc_title 0x1F context.
std::string serialize_payload(const AuthorPayload& p);

// SHA-256 of the serialized payload is the seed; block i of the bit stream is
// SHA-256(seed || i as 4-byte big-endian), i = 0, 1, ... Bytes are unpacked
// MSB first and fill the 64x64 watermark row-major.
Watermark generate_context_watermark(const AuthorPayload& p);

// 64x64 image, pixel >= 128 -> 1.
Watermark binarize_logo(const Image& img);

// SHA-256 over the bits packed MSB first, row-major, zero-padded to a byte.
WatermarkDigest watermark_digest(const Watermark& wm);

}  // namespace docmark
