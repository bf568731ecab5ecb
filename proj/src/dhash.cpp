// Copyright 2025 The GeoDiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geodiff/dhash.hpp"

#include <cctype>

#include "geodiff/errors.hpp"

namespace geodiff {

std::uint64_t dhash(const GrayImage& gray, int rows, int cols) {
  if (gray.width < 1 || gray.height < 1) {
    throw UndecodableImage("empty image");
  }
  if (rows < 1 || cols < 1 || rows * cols > 64) {
    throw InvalidParameter("dhash geometry must fit 64 bits");
  }
  GrayImage small = resize_bilinear(gray, cols + 1, rows);
  std::uint64_t hash = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      hash <<= 1;
      if (small.at(c, r) > small.at(c + 1, r)) hash |= 1;  // ties stay 0
    }
  }
  // Row-major, first comparison in the MSB of the used width.
  hash <<= 64 - rows * cols;
  return hash;
}

std::uint64_t dhash(const Raster& image, int rows, int cols) {
  if (image.empty()) throw UndecodableImage("empty image");
  return dhash(to_gray(image), rows, cols);
}

std::string hash_to_hex(std::uint64_t hash) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::uint64_t hash_from_hex(const std::string& hex) {
  if (hex.size() != 16) {
    throw InvalidParameter("icon hash must be 16 hex characters: " + hex);
  }
  std::uint64_t v = 0;
  for (char c : hex) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw InvalidParameter("icon hash must be 16 hex characters: " + hex);
    }
    v = (v << 4) | static_cast<std::uint64_t>(digit);
  }
  return v;
}

}  // namespace geodiff
