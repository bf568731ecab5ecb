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

#include <cstdint>
#include <string>
#include <vector>

#include "geodiff/bytes.hpp"

namespace geodiff {

// Decoded RGB8 raster, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel

  bool empty() const { return width <= 0 || height <= 0; }
  const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
  std::uint8_t* pixel(int x, int y) {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
};

// Grayscale plane with float samples, used as the dHash intermediate.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> samples;

  float at(int x, int y) const {
    return samples[static_cast<std::size_t>(y) * width + x];
  }
};

// Fixed luma weights 0.299 R + 0.587 G + 0.114 B.
GrayImage to_gray(const Raster& image);

// Bilinear resample with half-pixel centers: dst pixel (x, y) samples the
// source at ((x + 0.5) * sw / dw - 0.5, (y + 0.5) * sh / dh - 0.5), edges
// clamped.
GrayImage resize_bilinear(const GrayImage& src, int dst_width, int dst_height);
Raster resize_bilinear(const Raster& src, int dst_width, int dst_height);

// Decodes PNG (via libpng) or PPM/PGM (P2/P3/P5/P6). Alpha is composited
// over white. Throws UndecodableImage.
Raster load_image(const std::string& path);
Raster decode_image(ByteView data);

}  // namespace geodiff
