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
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace geodiff {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::string to_string(ByteView b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

// Bounds-checked little-endian cursor over a byte view. All binary formats
// handled here (zip, AXML, DEX, the signing block) are little-endian except
// where noted at the call site.
class ByteCursor {
 public:
  explicit ByteCursor(ByteView data) : data_(data) {}

  std::size_t pos() const { return pos_; }
  std::size_t size() const { return data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool ok() const { return !failed_; }

  void seek(std::size_t to) {
    if (to > data_.size()) {
      failed_ = true;
      pos_ = data_.size();
    } else {
      pos_ = to;
    }
  }

  void skip(std::size_t n) { seek(failed_ ? pos_ : pos_ + n); }

  std::uint8_t u8() { return read_le<std::uint8_t>(); }
  std::uint16_t u16() { return read_le<std::uint16_t>(); }
  std::uint32_t u32() { return read_le<std::uint32_t>(); }
  std::uint64_t u64() { return read_le<std::uint64_t>(); }

  // ULEB128 as used by DEX. Caps at 5 bytes per the format.
  std::uint32_t uleb128() {
    std::uint32_t result = 0;
    for (int shift = 0; shift < 35; shift += 7) {
      std::uint8_t b = u8();
      if (failed_) return 0;
      result |= static_cast<std::uint32_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return result;
    }
    failed_ = true;
    return 0;
  }

  ByteView view(std::size_t n) {
    if (failed_ || n > remaining()) {
      failed_ = true;
      return {};
    }
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  template <typename T>
  T read_le() {
    if (failed_ || sizeof(T) > remaining()) {
      failed_ = true;
      return T{};
    }
    T v{};
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;  // host is little-endian on every supported target
  }

  ByteView data_;
  std::size_t pos_ = 0;
  bool failed_ = false;
};

// Little-endian writers for the fixture builders and the signing-block walk.
inline void put_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }
inline void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
inline void put_u32(Bytes& out, std::uint32_t v) {
  put_u16(out, static_cast<std::uint16_t>(v));
  put_u16(out, static_cast<std::uint16_t>(v >> 16));
}
inline void put_u64(Bytes& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}
inline void put_bytes(Bytes& out, ByteView v) {
  out.insert(out.end(), v.begin(), v.end());
}

std::string to_hex(ByteView data);

}  // namespace geodiff
