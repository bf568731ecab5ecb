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

#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "geodiff/raster.hpp"

namespace geodiff {

// Difference hash over adjacent-pixel brightness comparisons.
//
// The image is converted to grayscale, bilinearly resampled to
// (cols + 1) x rows, and bit (r * cols + c) is set iff the sample at
// (r, c) is strictly brighter than the one at (r, c + 1). Bits are packed
// row-major with bit 0 in the most significant position, so a uniform
// image hashes to 0 and a monotone left-bright horizontal ramp to all
// ones. Default geometry is the usual 8x8 = 64-bit hash.
std::uint64_t dhash(const Raster& image, int rows = 8, int cols = 8);
std::uint64_t dhash(const GrayImage& gray, int rows = 8, int cols = 8);

inline int hamming(std::uint64_t a, std::uint64_t b) {
  return std::popcount(a ^ b);
}

// 16 lowercase hex characters, zero padded.
std::string hash_to_hex(std::uint64_t hash);

// Parses exactly 16 hex characters; throws InvalidParameter otherwise.
std::uint64_t hash_from_hex(const std::string& hex);

}  // namespace geodiff
