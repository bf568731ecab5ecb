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

#include "geodiff/dex.hpp"

#include "geodiff/digest.hpp"
#include "geodiff/errors.hpp"

namespace geodiff {

namespace {

struct DexHeader {
  std::uint32_t string_ids_size, string_ids_off;
  std::uint32_t class_defs_size, class_defs_off;
};

DexHeader parse_header(ByteView dex) {
  if (dex.size() < 8) throw TruncatedDex("header");
  static const std::uint8_t kMagicPrefix[4] = {'d', 'e', 'x', '\n'};
  for (int i = 0; i < 4; ++i) {
    if (dex[i] != kMagicPrefix[i]) throw BadDexMagic();
  }
  // Version "0NN\0": three digits and a terminator.
  if (dex[4] != '0' || dex[5] < '0' || dex[5] > '9' || dex[6] < '0' ||
      dex[6] > '9' || dex[7] != 0) {
    throw BadDexMagic();
  }
  if (dex.size() < 0x70) throw TruncatedDex("header");

  ByteCursor cur(dex);
  cur.seek(0x38);
  DexHeader header;
  header.string_ids_size = cur.u32();
  header.string_ids_off = cur.u32();
  cur.seek(0x60);
  header.class_defs_size = cur.u32();
  header.class_defs_off = cur.u32();
  if (!cur.ok()) throw TruncatedDex("header");

  auto check = [&](std::uint64_t off, std::uint64_t count, std::uint64_t stride,
                   const char* section) {
    if (count != 0 && off + count * stride > dex.size()) throw TruncatedDex(section);
  };
  check(header.string_ids_off, header.string_ids_size, 4, "string_ids");
  check(header.class_defs_off, header.class_defs_size, 32, "class_defs");
  return header;
}

std::string read_string_item(ByteView dex, std::uint32_t data_off) {
  ByteCursor cur(dex);
  cur.seek(data_off);
  cur.uleb128();  // decoded UTF-16 length, not needed for byte-wise use
  std::size_t start = cur.pos();
  while (cur.ok() && cur.u8() != 0) {
  }
  if (!cur.ok()) throw TruncatedDex("string_data");
  return std::string(reinterpret_cast<const char*>(dex.data()) + start,
                     cur.pos() - 1 - start);
}

// Advances past one encoded_value. Needed to find where static_values end.
void skip_encoded_value(ByteCursor& cur);

void skip_encoded_array(ByteCursor& cur) {
  std::uint32_t size = cur.uleb128();
  for (std::uint32_t i = 0; i < size && cur.ok(); ++i) skip_encoded_value(cur);
}

void skip_encoded_annotation(ByteCursor& cur) {
  cur.uleb128();  // type_idx
  std::uint32_t size = cur.uleb128();
  for (std::uint32_t i = 0; i < size && cur.ok(); ++i) {
    cur.uleb128();  // name_idx
    skip_encoded_value(cur);
  }
}

void skip_encoded_value(ByteCursor& cur) {
  std::uint8_t header = cur.u8();
  std::uint8_t type = header & 0x1f;
  std::uint8_t arg = header >> 5;
  switch (type) {
    case 0x00:  // byte
    case 0x02:  // short
    case 0x03:  // char
    case 0x04:  // int
    case 0x06:  // long
    case 0x10:  // float
    case 0x11:  // double
    case 0x15:  // method type
    case 0x16:  // method handle
    case 0x17:  // string
    case 0x18:  // type
    case 0x19:  // field
    case 0x1a:  // method
    case 0x1b:  // enum
      cur.skip(static_cast<std::size_t>(arg) + 1);
      break;
    case 0x1c:
      skip_encoded_array(cur);
      break;
    case 0x1d:
      skip_encoded_annotation(cur);
      break;
    case 0x1e:  // null
    case 0x1f:  // boolean, value lives in arg
      break;
    default:
      cur.skip(cur.remaining() + 1);  // poison: unknown value type
  }
}

}  // namespace

std::vector<std::string> dex_strings(ByteView dex) {
  DexHeader header = parse_header(dex);
  std::vector<std::string> strings;
  strings.reserve(header.string_ids_size);
  ByteCursor ids(dex);
  ids.seek(header.string_ids_off);
  for (std::uint32_t i = 0; i < header.string_ids_size; ++i) {
    std::uint32_t data_off = ids.u32();
    if (!ids.ok()) throw TruncatedDex("string_ids");
    strings.push_back(read_string_item(dex, data_off));
  }
  return strings;
}

std::vector<DexClassSummary> list_dex_classes(ByteView dex) {
  DexHeader header = parse_header(dex);
  std::vector<std::string> strings = dex_strings(dex);

  // type_ids table: indexes into the string pool.
  ByteCursor cur(dex);
  cur.seek(0x40);
  std::uint32_t type_ids_size = cur.u32();
  std::uint32_t type_ids_off = cur.u32();
  if (!cur.ok() ||
      (type_ids_size != 0 && type_ids_off + type_ids_size * 4ull > dex.size())) {
    throw TruncatedDex("type_ids");
  }
  auto type_descriptor = [&](std::uint32_t type_idx) -> const std::string& {
    if (type_idx >= type_ids_size) throw TruncatedDex("type_ids");
    ByteCursor t(dex);
    t.seek(type_ids_off + type_idx * 4ull);
    std::uint32_t string_idx = t.u32();
    if (string_idx >= strings.size()) throw TruncatedDex("string_ids");
    return strings[string_idx];
  };

  std::vector<DexClassSummary> classes;
  classes.reserve(header.class_defs_size);
  for (std::uint32_t i = 0; i < header.class_defs_size; ++i) {
    ByteCursor def(dex);
    def.seek(header.class_defs_off + i * 32ull);
    std::uint32_t class_idx = def.u32();
    def.skip(20);  // access, superclass, interfaces, source file, annotations
    std::uint32_t class_data_off = def.u32();
    std::uint32_t static_values_off = def.u32();
    if (!def.ok()) throw TruncatedDex("class_defs");

    Sha256 hasher;
    if (class_data_off != 0) {
      ByteCursor data(dex);
      data.seek(class_data_off);
      std::uint32_t static_fields = data.uleb128();
      std::uint32_t instance_fields = data.uleb128();
      std::uint32_t direct_methods = data.uleb128();
      std::uint32_t virtual_methods = data.uleb128();
      for (std::uint32_t f = 0; f < static_fields + instance_fields; ++f) {
        data.uleb128();  // field_idx_diff
        data.uleb128();  // access_flags
      }
      for (std::uint32_t m = 0; m < direct_methods + virtual_methods; ++m) {
        data.uleb128();  // method_idx_diff
        data.uleb128();  // access_flags
        std::uint32_t code_off = data.uleb128();
        if (!data.ok()) throw TruncatedDex("class_data");
        if (code_off == 0) continue;
        ByteCursor code(dex);
        code.seek(code_off);
        code.skip(12);  // registers/ins/outs/tries sizes, debug_info_off
        std::uint32_t insns_size = code.u32();
        ByteView insns = code.view(insns_size * 2ull);
        if (!code.ok()) throw TruncatedDex("code_item");
        hasher.update(insns);
      }
      if (!data.ok()) throw TruncatedDex("class_data");
    }
    if (static_values_off != 0) {
      ByteCursor values(dex);
      values.seek(static_values_off);
      std::size_t start = values.pos();
      skip_encoded_array(values);
      if (!values.ok()) throw TruncatedDex("static_values");
      hasher.update(dex.subspan(start, values.pos() - start));
    }

    DexClassSummary summary;
    summary.class_descriptor = type_descriptor(class_idx);
    summary.pseudo_path = descriptor_to_pseudo_path(summary.class_descriptor);
    summary.code_hash = hasher.finish_hex();
    classes.push_back(std::move(summary));
  }
  return classes;
}

std::string descriptor_to_pseudo_path(std::string_view descriptor) {
  std::string_view inner = descriptor;
  if (inner.size() >= 2 && inner.front() == 'L' && inner.back() == ';') {
    inner = inner.substr(1, inner.size() - 2);
  }
  return std::string(inner) + ".smali";
}

std::string descriptor_to_dotted(std::string_view descriptor) {
  std::string_view inner = descriptor;
  if (inner.size() >= 2 && inner.front() == 'L' && inner.back() == ';') {
    inner = inner.substr(1, inner.size() - 2);
  }
  std::string dotted(inner);
  for (char& c : dotted) {
    if (c == '/') c = '.';
  }
  return dotted;
}

}  // namespace geodiff
