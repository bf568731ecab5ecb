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

struct ZipEntryInfo {
  std::string name;
  std::uint16_t method = 0;  // 0 = stored, 8 = deflate
  std::uint32_t crc32 = 0;
  std::uint32_t compressed_size = 0;
  std::uint32_t uncompressed_size = 0;
  std::uint32_t local_header_offset = 0;
};

// Central-directory reader. The archive bytes stay in memory for the
// lifetime of the reader; entries are exposed in central-directory order
// with duplicate names collapsed to the last record (a warning diagnostic
// is recorded for each collision). No zip64 support.
class ZipReader {
 public:
  static ZipReader open_file(const std::string& path);
  static ZipReader from_bytes(Bytes data, const std::string& label = "<mem>");

  const std::vector<ZipEntryInfo>& entries() const { return entries_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Decompresses one entry, verifying size and CRC. Throws CorruptEntry.
  Bytes read(const ZipEntryInfo& entry) const;

  ByteView whole_file() const { return data_; }
  std::uint32_t central_directory_offset() const { return cd_offset_; }

 private:
  ZipReader() = default;
  void parse(const std::string& label);

  Bytes data_;
  std::vector<ZipEntryInfo> entries_;
  std::vector<std::string> warnings_;
  std::uint32_t cd_offset_ = 0;
};

}  // namespace geodiff
