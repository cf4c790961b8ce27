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
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "docmark/imaging.hpp"

namespace docmark {

// Dense row-major matrix of doubles.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static RealMatrix from_image(const Image& img);
  // Rounds to nearest and clamps to [0,255].
  Image to_image() const;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  RealMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t row, std::size_t col, const RealMatrix& src);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double sum_of_squares(const RealMatrix& m);
// Population standard deviation.
double stddev(const RealMatrix& m);

namespace transforms {

// 8x8 block, row-major.
using Block8 = std::array<double, 64>;

// Orthonormal type-II DCT and its inverse (type-III).
Block8 dct2_block(const Block8& b);
Block8 idct2_block(const Block8& b);

// (row, col) of the given position in the JPEG zigzag scan of an 8x8 block.
std::pair<int, int> zigzag_position(int index);

// Separable orthonormal 2-D DCT of an arbitrary rows x cols matrix.
RealMatrix dct2(const RealMatrix& m);
RealMatrix idct2(const RealMatrix& m);

// Top-left rows x cols corner of dct2(m), computed without the rest.
RealMatrix dct2_corner(const RealMatrix& m, std::size_t rows, std::size_t cols);
// idct2 of a full_rows x full_cols coefficient matrix that is zero outside
// the given top-left corner.
RealMatrix idct2_corner(const RealMatrix& corner, std::size_t full_rows, std::size_t full_cols);

// One level of the orthonormal 2-D Haar transform. For a 2x2 cell
// [a b; c d] the bands are
//   LL = (a+b+c+d)/2, LH = (a-b+c-d)/2, HL = (a+b-c-d)/2, HH = (a-b-c+d)/2.
// LH carries horizontal detail (differences across columns), HL vertical.
struct SubBands {
  RealMatrix ll;
  RealMatrix lh;
  RealMatrix hl;
  RealMatrix hh;

  RealMatrix& band(std::size_t index);
  const RealMatrix& band(std::size_t index) const;
};

SubBands haar_dwt(const RealMatrix& m);
RealMatrix haar_idwt(const SubBands& sb);

// Arnold cat map on a square N x N watermark: the bit at (x, y), with x the
// row and y the column, moves to ((x + y) mod N, (x + 2y) mod N) per
// iteration.
Watermark arnold(const Watermark& wm, int iterations);
Watermark arnold_inverse(const Watermark& wm, int iterations);
// Smallest p >= 1 such that p iterations of the map are the identity on N x N.
int arnold_period(std::size_t n);

struct ScrambleKey {
  int arnold_iterations = 7;
  std::uint64_t permutation_seed = 0;
};

// SplitMix64 (Steele, Lea and Flood). state += 0x9E3779B97F4A7C15, then
// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9, z = (z ^ (z >> 27)) *
// 0x94D049BB133111EB, z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection: draws below 2^64 mod bound are
  // discarded, then the draw is reduced modulo bound.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

// Fisher-Yates over the identity [0, count) driven by SplitMix64(seed):
// for i = count-1 down to 1, swap p[i] with p[below(i + 1)].
std::vector<std::size_t> keyed_permutation(std::size_t count, std::uint64_t seed);
std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm);

}  // namespace transforms
}  // namespace docmark
