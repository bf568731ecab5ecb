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

#include "geodiff/raster.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "geodiff/errors.hpp"

namespace geodiff {

GrayImage to_gray(const Raster& image) {
  GrayImage out;
  out.width = image.width;
  out.height = image.height;
  out.samples.resize(static_cast<std::size_t>(image.width) * image.height);
  const std::uint8_t* p = image.rgb.data();
  for (float& s : out.samples) {
    s = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
    p += 3;
  }
  return out;
}

namespace {

struct SampleCoord {
  int lo;
  int hi;
  float frac;
};

SampleCoord map_coord(int dst, int dst_size, int src_size) {
  float s = (dst + 0.5f) * static_cast<float>(src_size) / dst_size - 0.5f;
  s = std::clamp(s, 0.0f, static_cast<float>(src_size - 1));
  int lo = static_cast<int>(s);
  int hi = std::min(lo + 1, src_size - 1);
  return {lo, hi, s - lo};
}

}  // namespace

GrayImage resize_bilinear(const GrayImage& src, int dst_width,
                          int dst_height) {
  GrayImage out;
  out.width = dst_width;
  out.height = dst_height;
  out.samples.resize(static_cast<std::size_t>(dst_width) * dst_height);
  for (int y = 0; y < dst_height; ++y) {
    SampleCoord sy = map_coord(y, dst_height, src.height);
    for (int x = 0; x < dst_width; ++x) {
      SampleCoord sx = map_coord(x, dst_width, src.width);
      float top = src.at(sx.lo, sy.lo) * (1 - sx.frac) +
                  src.at(sx.hi, sy.lo) * sx.frac;
      float bot = src.at(sx.lo, sy.hi) * (1 - sx.frac) +
                  src.at(sx.hi, sy.hi) * sx.frac;
      out.samples[static_cast<std::size_t>(y) * dst_width + x] =
          top * (1 - sy.frac) + bot * sy.frac;
    }
  }
  return out;
}

Raster resize_bilinear(const Raster& src, int dst_width, int dst_height) {
  Raster out;
  out.width = dst_width;
  out.height = dst_height;
  out.rgb.resize(static_cast<std::size_t>(dst_width) * dst_height * 3);
  for (int y = 0; y < dst_height; ++y) {
    SampleCoord sy = map_coord(y, dst_height, src.height);
    for (int x = 0; x < dst_width; ++x) {
      SampleCoord sx = map_coord(x, dst_width, src.width);
      for (int ch = 0; ch < 3; ++ch) {
        float top = src.pixel(sx.lo, sy.lo)[ch] * (1 - sx.frac) +
                    src.pixel(sx.hi, sy.lo)[ch] * sx.frac;
        float bot = src.pixel(sx.lo, sy.hi)[ch] * (1 - sx.frac) +
                    src.pixel(sx.hi, sy.hi)[ch] * sx.frac;
        float v = top * (1 - sy.frac) + bot * sy.frac;
        out.pixel(x, y)[ch] =
            static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.f, 255.f)));
      }
    }
  }
  return out;
}

namespace {

Raster decode_png(ByteView data) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, data.data(), data.size())) {
    throw UndecodableImage(png.message);
  }
  png.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, rgba.data(), 0, nullptr)) {
    std::string why = png.message;
    png_image_free(&png);
    throw UndecodableImage(why);
  }

  Raster out;
  out.width = static_cast<int>(png.width);
  out.height = static_cast<int>(png.height);
  out.rgb.resize(static_cast<std::size_t>(out.width) * out.height * 3);
  for (std::size_t i = 0, n = rgba.size() / 4; i < n; ++i) {
    // Composite straight alpha over white.
    unsigned a = rgba[4 * i + 3];
    for (int ch = 0; ch < 3; ++ch) {
      unsigned v = rgba[4 * i + ch];
      out.rgb[3 * i + ch] =
          static_cast<std::uint8_t>((v * a + 255u * (255u - a) + 127u) / 255u);
    }
  }
  return out;
}

class PnmScanner {
 public:
  explicit PnmScanner(ByteView data) : data_(data) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) {
      throw UndecodableImage("bad PNM header");
    }
    int v = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      v = v * 10 + (data_[pos_++] - '0');
    }
    return v;
  }

  // Binary sample data starts after exactly one whitespace byte.
  ByteView raw_tail() {
    if (pos_ >= data_.size()) throw UndecodableImage("truncated PNM");
    ++pos_;
    return data_.subspan(pos_);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  ByteView data_;
  std::size_t pos_ = 2;  // past the magic
};

Raster decode_pnm(ByteView data) {
  char kind = static_cast<char>(data[1]);
  bool gray = (kind == '2' || kind == '5');
  bool ascii = (kind == '2' || kind == '3');

  PnmScanner scan(data);
  Raster out;
  out.width = scan.next_int();
  out.height = scan.next_int();
  int maxval = scan.next_int();
  if (out.width <= 0 || out.height <= 0 || maxval <= 0 || maxval > 255) {
    throw UndecodableImage("unsupported PNM geometry");
  }
  std::size_t pixels = static_cast<std::size_t>(out.width) * out.height;
  out.rgb.resize(pixels * 3);

  if (ascii) {
    for (std::size_t i = 0; i < pixels; ++i) {
      int r = scan.next_int();
      int g = gray ? r : scan.next_int();
      int b = gray ? r : scan.next_int();
      out.rgb[3 * i] = static_cast<std::uint8_t>(r);
      out.rgb[3 * i + 1] = static_cast<std::uint8_t>(g);
      out.rgb[3 * i + 2] = static_cast<std::uint8_t>(b);
    }
    return out;
  }

  ByteView raw = scan.raw_tail();
  std::size_t need = pixels * (gray ? 1 : 3);
  if (raw.size() < need) throw UndecodableImage("truncated PNM samples");
  for (std::size_t i = 0; i < pixels; ++i) {
    if (gray) {
      out.rgb[3 * i] = out.rgb[3 * i + 1] = out.rgb[3 * i + 2] = raw[i];
    } else {
      out.rgb[3 * i] = raw[3 * i];
      out.rgb[3 * i + 1] = raw[3 * i + 1];
      out.rgb[3 * i + 2] = raw[3 * i + 2];
    }
  }
  return out;
}

}  // namespace

Raster decode_image(ByteView data) {
  if (data.size() >= 8 && data[0] == 0x89 && data[1] == 'P' &&
      data[2] == 'N' && data[3] == 'G') {
    return decode_png(data);
  }
  if (data.size() >= 3 && data[0] == 'P' && data[1] >= '2' && data[1] <= '6' &&
      data[1] != '4') {
    return decode_pnm(data);
  }
  throw UndecodableImage("unrecognized image format");
}

Raster load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UndecodableImage("cannot open " + path);
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  return decode_image(data);
}

}  // namespace geodiff
