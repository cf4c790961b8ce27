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
#include "docmark/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "docmark/error.hpp"

namespace docmark {

RealMatrix RealMatrix::from_image(const Image& img) {
  RealMatrix m(img.height(), img.width());
  std::copy(img.pixels().begin(), img.pixels().end(), m.data_.begin());
  return m;
}

Image RealMatrix::to_image() const {
  Image img(cols_, rows_);
  auto out = img.pixels();
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::clamp(std::lround(data_[i]), 0L, 255L));
  }
  return img;
}

RealMatrix RealMatrix::block(std::size_t row, std::size_t col, std::size_t rows,
                             std::size_t cols) const {
  RealMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((row + r) * cols_ + col), cols,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return out;
}

void RealMatrix::set_block(std::size_t row, std::size_t col, const RealMatrix& src) {
  for (std::size_t r = 0; r < src.rows_; ++r) {
    std::copy_n(src.data_.begin() + static_cast<std::ptrdiff_t>(r * src.cols_), src.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((row + r) * cols_ + col));
  }
}

double sum_of_squares(const RealMatrix& m) {
  return std::accumulate(m.data().begin(), m.data().end(), 0.0,
                         [](double acc, double v) { return acc + v * v; });
}

double stddev(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  const double n = static_cast<double>(m.size());
  const double mean = std::accumulate(m.data().begin(), m.data().end(), 0.0) / n;
  double acc = 0.0;
  for (double v : m.data()) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / n);
}

namespace transforms {
namespace {

// basis(k, n) = c_k cos(pi (2n + 1) k / 2N), orthonormal rows. Only the
// first `rows` frequencies are produced.
RealMatrix dct_basis(std::size_t n, std::size_t rows) {
  RealMatrix b(rows, n);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < rows; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
    for (std::size_t i = 0; i < n; ++i) {
      b(k, i) = scale * std::cos(std::numbers::pi * (2.0 * static_cast<double>(i) + 1.0) *
                                 static_cast<double>(k) / (2.0 * nn));
    }
  }
  return b;
}

RealMatrix transpose(const RealMatrix& m) {
  RealMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows(), b.cols());
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  const double* bd = b.data().data();
  double* od = out.data().data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* orow = od + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = bd + k * cols;
      for (std::size_t j = 0; j < cols; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

RealMatrix dct_basis(std::size_t n) { return dct_basis(n, n); }

const RealMatrix& block_basis() {
  static const RealMatrix basis = dct_basis(8);
  return basis;
}

}  // namespace

Block8 dct2_block(const Block8& b) {
  const auto& basis = block_basis();
  Block8 tmp{};
  Block8 out{};
  // rows: tmp = B * X
  for (int k = 0; k < 8; ++k)
    for (int c = 0; c < 8; ++c) {
      double acc = 0.0;
      for (int r = 0; r < 8; ++r) acc += basis(k, r) * b[r * 8 + c];
      tmp[k * 8 + c] = acc;
    }
  // columns: out = tmp * B^T
  for (int r = 0; r < 8; ++r)
    for (int k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (int c = 0; c < 8; ++c) acc += tmp[r * 8 + c] * basis(k, c);
      out[r * 8 + k] = acc;
    }
  return out;
}

Block8 idct2_block(const Block8& b) {
  const auto& basis = block_basis();
  Block8 tmp{};
  Block8 out{};
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += basis(k, r) * b[k * 8 + c];
      tmp[r * 8 + c] = acc;
    }
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += tmp[r * 8 + k] * basis(k, c);
      out[r * 8 + c] = acc;
    }
  return out;
}

std::pair<int, int> zigzag_position(int index) {
  if (index < 0 || index >= 64) throw validation_error("zigzag index outside [0,64)");
  int i = 0;
  for (int s = 0; s < 15; ++s) {
    // Anti-diagonal s runs upward (row decreasing) when s is even.
    const int lo = std::max(0, s - 7);
    const int hi = std::min(s, 7);
    const int len = hi - lo + 1;
    if (index < i + len) {
      const int offset = index - i;
      const int row = (s % 2 == 0) ? hi - offset : lo + offset;
      return {row, s - row};
    }
    i += len;
  }
  return {7, 7};
}

RealMatrix dct2(const RealMatrix& m) {
  const auto br = dct_basis(m.rows());
  const auto bc = dct_basis(m.cols());
  return multiply(multiply(br, m), transpose(bc));
}

RealMatrix idct2(const RealMatrix& m) {
  const auto br = dct_basis(m.rows());
  const auto bc = dct_basis(m.cols());
  return multiply(multiply(transpose(br), m), bc);
}

RealMatrix dct2_corner(const RealMatrix& m, std::size_t rows, std::size_t cols) {
  if (rows > m.rows() || cols > m.cols()) throw validation_error("DCT corner larger than input");
  const auto br = dct_basis(m.rows(), rows);
  const auto bc = dct_basis(m.cols(), cols);
  return multiply(multiply(br, m), transpose(bc));
}

RealMatrix idct2_corner(const RealMatrix& corner, std::size_t full_rows, std::size_t full_cols) {
  if (corner.rows() > full_rows || corner.cols() > full_cols) {
    throw validation_error("DCT corner larger than output");
  }
  const auto br = dct_basis(full_rows, corner.rows());
  const auto bc = dct_basis(full_cols, corner.cols());
  return multiply(transpose(br), multiply(corner, bc));
}

RealMatrix& SubBands::band(std::size_t index) {
  switch (index) {
    case 0: return ll;
    case 1: return lh;
    case 2: return hl;
    case 3: return hh;
  }
  throw validation_error("sub-band index outside [0,4)");
}

const RealMatrix& SubBands::band(std::size_t index) const {
  return const_cast<SubBands*>(this)->band(index);
}

SubBands haar_dwt(const RealMatrix& m) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) {
    throw validation_error("odd dimension: Haar DWT needs even rows and columns");
  }
  const std::size_t h = m.rows() / 2;
  const std::size_t w = m.cols() / 2;
  SubBands sb{RealMatrix(h, w), RealMatrix(h, w), RealMatrix(h, w), RealMatrix(h, w)};
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double a = m(2 * r, 2 * c);
      const double b = m(2 * r, 2 * c + 1);
      const double cc = m(2 * r + 1, 2 * c);
      const double d = m(2 * r + 1, 2 * c + 1);
      sb.ll(r, c) = (a + b + cc + d) / 2.0;
      sb.lh(r, c) = (a - b + cc - d) / 2.0;
      sb.hl(r, c) = (a + b - cc - d) / 2.0;
      sb.hh(r, c) = (a - b - cc + d) / 2.0;
    }
  }
  return sb;
}

RealMatrix haar_idwt(const SubBands& sb) {
  const std::size_t h = sb.ll.rows();
  const std::size_t w = sb.ll.cols();
  for (std::size_t i = 1; i < 4; ++i) {
    if (sb.band(i).rows() != h || sb.band(i).cols() != w) {
      throw validation_error("sub-band dimensions differ");
    }
  }
  RealMatrix m(2 * h, 2 * w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double ll = sb.ll(r, c), lh = sb.lh(r, c), hl = sb.hl(r, c), hh = sb.hh(r, c);
      m(2 * r, 2 * c) = (ll + lh + hl + hh) / 2.0;
      m(2 * r, 2 * c + 1) = (ll - lh + hl - hh) / 2.0;
      m(2 * r + 1, 2 * c) = (ll + lh - hl - hh) / 2.0;
      m(2 * r + 1, 2 * c + 1) = (ll - lh - hl + hh) / 2.0;
    }
  }
  return m;
}

namespace {

void require_square(const Watermark& wm) {
  if (wm.rows() != wm.cols()) throw validation_error("Arnold transform needs a square watermark");
  if (wm.rows() == 0) throw validation_error("empty watermark");
}

void require_iterations(int iterations) {
  if (iterations < 0) throw validation_error("Arnold iteration count must be non-negative");
}

}  // namespace

Watermark arnold(const Watermark& wm, int iterations) {
  require_square(wm);
  require_iterations(iterations);
  const std::size_t n = wm.rows();
  Watermark cur = wm;
  Watermark next(n, n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) next((x + y) % n, (x + 2 * y) % n) = cur(x, y);
    std::swap(cur, next);
  }
  return cur;
}

Watermark arnold_inverse(const Watermark& wm, int iterations) {
  require_square(wm);
  require_iterations(iterations);
  const std::size_t n = wm.rows();
  Watermark cur = wm;
  Watermark next(n, n);
  for (int it = 0; it < iterations; ++it) {
    // Inverse map: x = 2x' - y', y = y' - x' (mod n).
    for (std::size_t xp = 0; xp < n; ++xp)
      for (std::size_t yp = 0; yp < n; ++yp) {
        const std::size_t x = (2 * xp + n - yp) % n;
        const std::size_t y = (yp + n - xp) % n;
        next(x, y) = cur(xp, yp);
      }
    std::swap(cur, next);
  }
  return cur;
}

int arnold_period(std::size_t n) {
  if (n == 0) throw validation_error("Arnold period needs n >= 1");
  if (n == 1) return 1;
  // Powers of [[1,1],[1,2]] mod n until the identity comes back.
  std::uint64_t a = 1, b = 1, c = 1, d = 2;
  const std::uint64_t m = n;
  for (int p = 1;; ++p) {
    if (a % m == 1 && b % m == 0 && c % m == 0 && d % m == 1) return p;
    const std::uint64_t na = (a + c) % m, nb = (b + d) % m;
    const std::uint64_t nc = (a + 2 * c) % m, nd = (b + 2 * d) % m;
    a = na, b = nb, c = nc, d = nd;
  }
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<std::size_t> keyed_permutation(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw validation_error("keyed permutation needs count >= 1");
  std::vector<std::size_t> p(count);
  std::iota(p.begin(), p.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = count - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

}  // namespace transforms
}  // namespace docmark
