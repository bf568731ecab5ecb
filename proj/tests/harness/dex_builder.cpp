#include "dex_builder.hpp"

#include <zlib.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace geodiff::testing {

namespace {

void put_uleb(Bytes& out, std::uint32_t v) {
  do {
    std::uint8_t b = v & 0x7f;
    v >>= 7;
    if (v != 0) b |= 0x80;
    put_u8(out, b);
  } while (v != 0);
}

void align4(Bytes& out) {
  while (out.size() % 4 != 0) put_u8(out, 0);
}

}  // namespace

DexBuilder& DexBuilder::add_class(DexClassSpec spec) {
  for (const Bytes& method : spec.direct_methods) {
    if (method.size() % 2 != 0) throw std::runtime_error("odd insns size");
  }
  for (const Bytes& method : spec.virtual_methods) {
    if (method.size() % 2 != 0) throw std::runtime_error("odd insns size");
  }
  classes_.push_back(std::move(spec));
  return *this;
}

DexBuilder& DexBuilder::add_string(const std::string& value) {
  extra_strings_.push_back(value);
  return *this;
}

Bytes DexBuilder::build() const {
  std::vector<std::string> strings = extra_strings_;
  for (const DexClassSpec& cls : classes_) strings.push_back(cls.descriptor);
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  std::map<std::string, std::uint32_t> string_index;
  for (std::uint32_t i = 0; i < strings.size(); ++i) string_index[strings[i]] = i;

  std::uint32_t string_count = static_cast<std::uint32_t>(strings.size());
  std::uint32_t class_count = static_cast<std::uint32_t>(classes_.size());
  std::uint32_t string_ids_off = 0x70;
  std::uint32_t type_ids_off = string_ids_off + 4 * string_count;
  std::uint32_t class_defs_off = type_ids_off + 4 * class_count;
  std::uint32_t data_off = class_defs_off + 32 * class_count;

  // Data region, laid out while offsets are recorded.
  Bytes data;
  auto here = [&] { return data_off + static_cast<std::uint32_t>(data.size()); };

  std::vector<std::uint32_t> string_offsets(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) {
    string_offsets[i] = here();
    put_uleb(data, static_cast<std::uint32_t>(strings[i].size()));
    put_bytes(data, as_bytes(strings[i]));
    put_u8(data, 0);
  }

  struct ClassOffsets {
    std::vector<std::uint32_t> direct_code;
    std::vector<std::uint32_t> virtual_code;
    std::uint32_t class_data = 0;
    std::uint32_t static_values = 0;
  };
  std::vector<ClassOffsets> offsets(classes_.size());

  auto emit_code_item = [&](const Bytes& insns) {
    align4(data);
    std::uint32_t at = here();
    put_u16(data, 1);  // registers
    put_u16(data, 0);  // ins
    put_u16(data, 0);  // outs
    put_u16(data, 0);  // tries
    put_u32(data, 0);  // debug info
    put_u32(data, static_cast<std::uint32_t>(insns.size() / 2));
    put_bytes(data, insns);
    align4(data);
    return at;
  };

  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (const Bytes& method : classes_[i].direct_methods) {
      offsets[i].direct_code.push_back(emit_code_item(method));
    }
    for (const Bytes& method : classes_[i].virtual_methods) {
      offsets[i].virtual_code.push_back(emit_code_item(method));
    }
  }

  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const DexClassSpec& cls = classes_[i];
    bool has_methods =
        !cls.direct_methods.empty() || !cls.virtual_methods.empty();
    if (has_methods) {
      offsets[i].class_data = here();
      put_uleb(data, 0);  // static fields
      put_uleb(data, 0);  // instance fields
      put_uleb(data, static_cast<std::uint32_t>(cls.direct_methods.size()));
      put_uleb(data, static_cast<std::uint32_t>(cls.virtual_methods.size()));
      for (std::uint32_t code : offsets[i].direct_code) {
        put_uleb(data, 0);  // method_idx_diff
        put_uleb(data, 1);  // access flags
        put_uleb(data, code);
      }
      for (std::uint32_t code : offsets[i].virtual_code) {
        put_uleb(data, 0);
        put_uleb(data, 1);
        put_uleb(data, code);
      }
    }
    if (!cls.static_values.empty()) {
      offsets[i].static_values = here();
      put_bytes(data, cls.static_values);
    }
  }

  Bytes out;
  put_bytes(out, as_bytes(std::string("dex\n035")));
  put_u8(out, 0);
  put_u32(out, 0);  // checksum, patched below
  for (int i = 0; i < 20; ++i) put_u8(out, 0);  // sha1 signature, unused
  put_u32(out, data_off + static_cast<std::uint32_t>(data.size()));  // file size
  put_u32(out, 0x70);        // header size
  put_u32(out, 0x12345678);  // endian tag
  put_u32(out, 0);           // link size
  put_u32(out, 0);           // link off
  put_u32(out, 0);           // map off
  put_u32(out, string_count);
  put_u32(out, string_count == 0 ? 0 : string_ids_off);
  put_u32(out, class_count);  // type ids, one per class
  put_u32(out, class_count == 0 ? 0 : type_ids_off);
  put_u32(out, 0);  // proto ids
  put_u32(out, 0);
  put_u32(out, 0);  // field ids
  put_u32(out, 0);
  put_u32(out, 0);  // method ids
  put_u32(out, 0);
  put_u32(out, class_count);
  put_u32(out, class_count == 0 ? 0 : class_defs_off);
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  put_u32(out, data_off);

  for (std::uint32_t offset : string_offsets) put_u32(out, offset);
  for (const DexClassSpec& cls : classes_) {
    put_u32(out, string_index.at(cls.descriptor));
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    put_u32(out, static_cast<std::uint32_t>(i));  // class_idx -> type id
    put_u32(out, 1);            // access flags
    put_u32(out, 0xffffffff);   // superclass
    put_u32(out, 0);            // interfaces
    put_u32(out, 0xffffffff);   // source file
    put_u32(out, 0);            // annotations
    put_u32(out, offsets[i].class_data);
    put_u32(out, offsets[i].static_values);
  }
  put_bytes(out, data);

  std::uint32_t checksum = static_cast<std::uint32_t>(
      adler32(1L, out.data() + 12, static_cast<uInt>(out.size() - 12)));
  out[8] = static_cast<std::uint8_t>(checksum);
  out[9] = static_cast<std::uint8_t>(checksum >> 8);
  out[10] = static_cast<std::uint8_t>(checksum >> 16);
  out[11] = static_cast<std::uint8_t>(checksum >> 24);
  return out;
}

}  // namespace geodiff::testing
