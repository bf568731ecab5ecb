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

#include "geodiff/zip.hpp"

#include <zlib.h>

#include <cstdio>
#include <unordered_map>

#include "geodiff/errors.hpp"

namespace geodiff {

namespace {

constexpr std::uint32_t kEocdSignature = 0x06054b50;
constexpr std::uint32_t kCentralSignature = 0x02014b50;
constexpr std::uint32_t kLocalSignature = 0x04034b50;
constexpr std::size_t kEocdMinSize = 22;
constexpr std::size_t kEocdMaxCommentSize = 0xffff;

Bytes read_whole_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) throw IoError("cannot open " + path);
  std::fseek(f, 0, SEEK_END);
  long size = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  Bytes data(size > 0 ? static_cast<std::size_t>(size) : 0);
  if (!data.empty() && std::fread(data.data(), 1, data.size(), f) != data.size()) {
    std::fclose(f);
    throw IoError("short read on " + path);
  }
  std::fclose(f);
  return data;
}

Bytes inflate_raw(ByteView compressed, std::size_t expected_size, const std::string& path) {
  Bytes out(expected_size);
  z_stream zs{};
  // Negative window bits selects raw deflate, no zlib header.
  if (inflateInit2(&zs, -15) != Z_OK) throw CorruptEntry(path);
  zs.next_in = const_cast<Bytef*>(compressed.data());
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  bool complete = rc == Z_STREAM_END && zs.total_out == expected_size;
  // Zero-byte entries legitimately report Z_BUF_ERROR with nothing to do.
  if (expected_size == 0 && compressed.size() <= 2) complete = true;
  inflateEnd(&zs);
  if (!complete) throw CorruptEntry(path);
  return out;
}

}  // namespace

ZipReader ZipReader::open_file(const std::string& path) {
  return from_bytes(read_whole_file(path), path);
}

ZipReader ZipReader::from_bytes(Bytes data, const std::string& label) {
  ZipReader reader;
  reader.data_ = std::move(data);
  reader.parse(label);
  return reader;
}

void ZipReader::parse(const std::string& label) {
  if (data_.size() < kEocdMinSize) throw NotAZipArchive(label);

  // The end-of-central-directory record sits at the tail, possibly followed
  // by an archive comment of up to 64KB. Scan backwards for its signature.
  std::size_t scan_floor =
      data_.size() > kEocdMinSize + kEocdMaxCommentSize
          ? data_.size() - kEocdMinSize - kEocdMaxCommentSize
          : 0;
  std::size_t eocd_pos = data_.size();  // sentinel: not found
  for (std::size_t pos = data_.size() - kEocdMinSize;; --pos) {
    ByteCursor probe(data_);
    probe.seek(pos);
    if (probe.u32() == kEocdSignature) {
      eocd_pos = pos;
      break;
    }
    if (pos == scan_floor) break;
  }
  if (eocd_pos == data_.size()) throw NotAZipArchive(label);

  ByteCursor eocd(data_);
  eocd.seek(eocd_pos + 4);
  eocd.skip(6);  // disk number, cd start disk, entries on this disk
  std::uint16_t total_entries = eocd.u16();
  std::uint32_t cd_size = eocd.u32();
  cd_offset_ = eocd.u32();
  if (!eocd.ok() || cd_offset_ + static_cast<std::uint64_t>(cd_size) > data_.size()) {
    throw NotAZipArchive(label);
  }

  std::unordered_map<std::string, std::size_t> index_by_name;
  ByteCursor cd(data_);
  cd.seek(cd_offset_);
  for (std::uint16_t i = 0; i < total_entries; ++i) {
    if (cd.u32() != kCentralSignature || !cd.ok()) throw NotAZipArchive(label);
    cd.skip(4);  // version made by, version needed
    cd.skip(2);  // general purpose flags
    ZipEntryInfo entry;
    entry.method = cd.u16();
    cd.skip(4);  // dos time, dos date
    entry.crc32 = cd.u32();
    entry.compressed_size = cd.u32();
    entry.uncompressed_size = cd.u32();
    std::uint16_t name_len = cd.u16();
    std::uint16_t extra_len = cd.u16();
    std::uint16_t comment_len = cd.u16();
    cd.skip(8);  // disk start, internal attrs, external attrs
    entry.local_header_offset = cd.u32();
    ByteView name_bytes = cd.view(name_len);
    cd.skip(extra_len);
    cd.skip(comment_len);
    if (!cd.ok()) throw NotAZipArchive(label);
    entry.name = to_string(name_bytes);

    auto [it, inserted] = index_by_name.emplace(entry.name, entries_.size());
    if (inserted) {
      entries_.push_back(std::move(entry));
    } else {
      // Installers resolve duplicate names to the last central record, so
      // the reader does the same and flags the collision.
      warnings_.push_back("duplicate zip entry '" + entry.name +
                          "', keeping the last central-directory record");
      entries_[it->second] = std::move(entry);
    }
  }
}

Bytes ZipReader::read(const ZipEntryInfo& entry) const {
  ByteCursor local(data_);
  local.seek(entry.local_header_offset);
  if (local.u32() != kLocalSignature || !local.ok()) throw CorruptEntry(entry.name);
  local.skip(2);  // version needed
  local.skip(2);  // general purpose flags
  local.skip(2);  // method (central record is authoritative)
  local.skip(8);  // dos time/date, crc
  local.skip(8);  // sizes (may be zero when flag bit 3 is set)
  std::uint16_t name_len = local.u16();
  std::uint16_t extra_len = local.u16();
  local.skip(name_len);
  local.skip(extra_len);
  ByteView payload = local.view(entry.compressed_size);
  if (!local.ok()) throw CorruptEntry(entry.name);

  Bytes out;
  if (entry.method == 0) {
    if (entry.compressed_size != entry.uncompressed_size) throw CorruptEntry(entry.name);
    out.assign(payload.begin(), payload.end());
  } else if (entry.method == 8) {
    out = inflate_raw(payload, entry.uncompressed_size, entry.name);
  } else {
    throw CorruptEntry(entry.name);
  }

  std::uint32_t actual_crc = static_cast<std::uint32_t>(
      ::crc32(0L, out.empty() ? Z_NULL : out.data(), static_cast<uInt>(out.size())));
  if (actual_crc != entry.crc32) throw CorruptEntry(entry.name);
  return out;
}

}  // namespace geodiff
