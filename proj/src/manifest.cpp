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

#include "geodiff/manifest.hpp"

#include <vector>

#include "geodiff/errors.hpp"

namespace geodiff {

namespace {

constexpr std::uint16_t kChunkXml = 0x0003;
constexpr std::uint16_t kChunkStringPool = 0x0001;
constexpr std::uint16_t kChunkResourceMap = 0x0180;
constexpr std::uint16_t kChunkStartElement = 0x0102;
constexpr std::uint16_t kChunkEndElement = 0x0103;
constexpr std::uint32_t kNoEntry = 0xffffffff;
constexpr std::uint32_t kNameAttributeResId = 0x01010003;
constexpr std::uint8_t kTypeString = 0x03;
constexpr char kAndroidNamespace[] = "http://schemas.android.com/apk/res/android";

void append_codepoint_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

std::string utf16le_to_utf8(ByteCursor& cur, std::uint32_t units) {
  std::string out;
  out.reserve(units);
  for (std::uint32_t i = 0; i < units; ++i) {
    std::uint32_t u = cur.u16();
    if (u >= 0xd800 && u < 0xdc00 && i + 1 < units) {
      std::uint32_t low = cur.u16();
      ++i;
      if (low >= 0xdc00 && low < 0xe000) {
        append_codepoint_utf8(out, 0x10000 + ((u - 0xd800) << 10) + (low - 0xdc00));
        continue;
      }
      append_codepoint_utf8(out, 0xfffd);
      u = low;
    }
    if (u >= 0xd800 && u < 0xe000) u = 0xfffd;  // unpaired surrogate
    append_codepoint_utf8(out, u);
  }
  return out;
}

// chunk spans the whole string-pool chunk, header included.
std::vector<std::string> parse_string_pool(ByteView chunk, std::size_t chunk_offset) {
  ByteCursor header(chunk);
  header.skip(2);
  std::uint16_t header_size = header.u16();
  header.skip(4);  // chunk size, already validated by the walker
  std::uint32_t string_count = header.u32();
  header.skip(4);  // style count
  std::uint32_t flags = header.u32();
  std::uint32_t strings_start = header.u32();
  header.skip(4);  // styles start
  if (!header.ok() || header_size > chunk.size()) throw MalformedAxml(chunk_offset);
  bool utf8 = (flags & 0x100) != 0;

  std::vector<std::string> strings;
  strings.reserve(string_count);
  ByteCursor offsets(chunk);
  offsets.seek(header_size);
  for (std::uint32_t i = 0; i < string_count; ++i) {
    std::uint32_t offset = offsets.u32();
    if (!offsets.ok()) throw MalformedAxml(chunk_offset + header_size);
    ByteCursor str(chunk);
    str.seek(strings_start + offset);
    if (utf8) {
      // Two packed lengths (UTF-16 units, then bytes); high bit extends
      // the length to two bytes.
      std::uint32_t units = str.u8();
      if (units & 0x80) units = ((units & 0x7f) << 8) | str.u8();
      std::uint32_t byte_len = str.u8();
      if (byte_len & 0x80) byte_len = ((byte_len & 0x7f) << 8) | str.u8();
      ByteView data = str.view(byte_len);
      if (!str.ok()) throw MalformedAxml(chunk_offset + strings_start + offset);
      strings.push_back(to_string(data));
    } else {
      std::uint32_t units = str.u16();
      if (units & 0x8000) units = ((units & 0x7fff) << 16) | str.u16();
      std::string decoded = utf16le_to_utf8(str, units);
      if (!str.ok()) throw MalformedAxml(chunk_offset + strings_start + offset);
      strings.push_back(std::move(decoded));
    }
  }
  return strings;
}

std::string expand_if_component(const ManifestInfo& info, const std::string& name) {
  return expand_class_name(info.package_name, name);
}

// Routes one element's interesting attributes into the manifest record.
// parent is the immediate enclosing element name ("" at the root).
void handle_element(ManifestInfo& info, const std::string& element,
                    const std::string& parent, const std::string& android_name,
                    const std::string& package_attr) {
  if (element == "manifest" && parent.empty()) {
    info.package_name = package_attr;
  } else if (element == "uses-permission" && parent == "manifest") {
    if (!android_name.empty()) info.permissions.insert(android_name);
  } else if (parent == "application" && !android_name.empty()) {
    if (element == "activity") {
      info.activities.insert(expand_if_component(info, android_name));
    } else if (element == "service") {
      info.services.insert(expand_if_component(info, android_name));
    } else if (element == "receiver") {
      info.receivers.insert(expand_if_component(info, android_name));
    } else if (element == "provider") {
      info.providers.insert(expand_if_component(info, android_name));
    }
  }
}

ManifestInfo parse_axml(ByteView bytes) {
  ByteCursor cur(bytes);
  std::uint16_t type = cur.u16();
  std::uint16_t header_size = cur.u16();
  std::uint32_t total_size = cur.u32();
  if (!cur.ok() || type != kChunkXml || header_size != 8) throw MalformedAxml(0);
  if (total_size > bytes.size()) throw MalformedAxml(4);

  std::vector<std::string> pool;
  std::vector<std::uint32_t> resource_map;
  std::vector<std::string> stack;
  ManifestInfo info;

  auto pool_string = [&](std::uint32_t index, std::size_t at) -> std::string {
    if (index == kNoEntry) return "";
    if (index >= pool.size()) throw MalformedAxml(at);
    return pool[index];
  };

  std::size_t pos = header_size;
  while (pos + 8 <= total_size) {
    ByteCursor chunk(bytes);
    chunk.seek(pos);
    std::uint16_t chunk_type = chunk.u16();
    std::uint16_t chunk_header = chunk.u16();
    std::uint32_t chunk_size = chunk.u32();
    if (!chunk.ok() || chunk_size < 8 || chunk_header < 8 || chunk_header > chunk_size ||
        pos + chunk_size > total_size) {
      throw MalformedAxml(pos);
    }

    if (chunk_type == kChunkStringPool) {
      pool = parse_string_pool(bytes.subspan(pos, chunk_size), pos);
    } else if (chunk_type == kChunkResourceMap) {
      ByteCursor ids(bytes);
      ids.seek(pos + chunk_header);
      for (std::size_t i = 0; i < (chunk_size - chunk_header) / 4; ++i) {
        resource_map.push_back(ids.u32());
      }
      if (!ids.ok()) throw MalformedAxml(pos);
    } else if (chunk_type == kChunkStartElement) {
      ByteCursor body(bytes);
      body.seek(pos + chunk_header);
      body.skip(4);  // namespace of the element itself
      std::uint32_t name_idx = body.u32();
      std::uint16_t attribute_start = body.u16();
      std::uint16_t attribute_size = body.u16();
      std::uint16_t attribute_count = body.u16();
      if (!body.ok() || attribute_size < 20) throw MalformedAxml(pos);

      std::string element = pool_string(name_idx, pos);
      std::string android_name;
      std::string package_attr;
      for (std::uint16_t i = 0; i < attribute_count; ++i) {
        ByteCursor attr(bytes);
        attr.seek(pos + chunk_header + attribute_start +
                  static_cast<std::size_t>(i) * attribute_size);
        std::uint32_t ns_idx = attr.u32();
        std::uint32_t attr_name_idx = attr.u32();
        std::uint32_t raw_value_idx = attr.u32();
        attr.skip(2);  // typed value size
        attr.skip(1);  // reserved
        std::uint8_t data_type = attr.u8();
        std::uint32_t data = attr.u32();
        if (!attr.ok()) throw MalformedAxml(pos);

        std::string value;
        if (raw_value_idx != kNoEntry) {
          value = pool_string(raw_value_idx, pos);
        } else if (data_type == kTypeString) {
          value = pool_string(data, pos);
        }

        std::string attr_name = pool_string(attr_name_idx, pos);
        // The resource map identifies android:name even when the string
        // itself was mangled; fall back to the literal spelling.
        bool is_name = (attr_name_idx < resource_map.size() &&
                        resource_map[attr_name_idx] == kNameAttributeResId) ||
                       (attr_name == "name" &&
                        pool_string(ns_idx, pos) == kAndroidNamespace);
        if (is_name && android_name.empty()) android_name = value;
        if (ns_idx == kNoEntry && attr_name == "package") package_attr = value;
      }

      std::string parent = stack.empty() ? "" : stack.back();
      handle_element(info, element, parent, android_name, package_attr);
      stack.push_back(std::move(element));
    } else if (chunk_type == kChunkEndElement) {
      if (!stack.empty()) stack.pop_back();
    }
    // Namespace and cdata chunks carry nothing the manifest record needs.
    pos += chunk_size;
  }
  return info;
}

// Minimal plaintext-XML scanner, sufficient for manifest fixtures:
// elements, attributes, comments, processing instructions, the five
// predefined entities. No DTD or namespace resolution.
class TextXmlParser {
 public:
  explicit TextXmlParser(std::string_view text) : text_(text) {}

  ManifestInfo parse() {
    while (pos_ < text_.size()) {
      std::size_t open = text_.find('<', pos_);
      if (open == std::string_view::npos) break;
      pos_ = open;
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!")) {
        skip_until(">");
      } else if (starts_with("</")) {
        pos_ += 2;
        skip_until(">");
        if (!stack_.empty()) stack_.pop_back();
      } else {
        parse_element();
      }
    }
    return info_;
  }

 private:
  bool starts_with(std::string_view prefix) const {
    return text_.substr(pos_, prefix.size()) == prefix;
  }

  void skip_until(std::string_view terminator) {
    std::size_t end = text_.find(terminator, pos_);
    pos_ = end == std::string_view::npos ? text_.size() : end + terminator.size();
  }

  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string decode_entities(std::string_view raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      std::string_view rest = raw.substr(i);
      if (rest.starts_with("&amp;")) { out.push_back('&'); i += 4; }
      else if (rest.starts_with("&lt;")) { out.push_back('<'); i += 3; }
      else if (rest.starts_with("&gt;")) { out.push_back('>'); i += 3; }
      else if (rest.starts_with("&quot;")) { out.push_back('"'); i += 5; }
      else if (rest.starts_with("&apos;")) { out.push_back('\''); i += 5; }
      else out.push_back('&');
    }
    return out;
  }

  void parse_element() {
    ++pos_;  // consume '<'
    std::size_t name_start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '>' &&
           text_[pos_] != '/') {
      ++pos_;
    }
    std::string element(text_.substr(name_start, pos_ - name_start));

    std::string android_name;
    std::string package_attr;
    bool self_closing = false;
    while (pos_ < text_.size()) {
      skip_space();
      if (pos_ >= text_.size()) break;
      if (text_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (text_[pos_] == '/') {
        self_closing = true;
        ++pos_;
        continue;
      }
      std::size_t attr_start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '=' && !is_space(text_[pos_]) &&
             text_[pos_] != '>') {
        ++pos_;
      }
      std::string attr(text_.substr(attr_start, pos_ - attr_start));
      skip_space();
      std::string value;
      if (pos_ < text_.size() && text_[pos_] == '=') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\'')) {
          char quote = text_[pos_++];
          std::size_t value_start = pos_;
          while (pos_ < text_.size() && text_[pos_] != quote) ++pos_;
          value = decode_entities(text_.substr(value_start, pos_ - value_start));
          if (pos_ < text_.size()) ++pos_;  // closing quote
        }
      }
      if (attr == "android:name") android_name = value;
      if (attr == "package") package_attr = value;
    }

    std::string parent = stack_.empty() ? "" : stack_.back();
    handle_element(info_, element, parent, android_name, package_attr);
    if (!self_closing) stack_.push_back(std::move(element));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> stack_;
  ManifestInfo info_;
};

}  // namespace

std::string expand_class_name(const std::string& package, const std::string& name) {
  if (name.empty()) return name;
  if (name.front() == '.') return package + name;
  if (name.find('.') == std::string::npos) return package + "." + name;
  return name;
}

ManifestInfo parse_manifest(ByteView bytes) {
  if (bytes.size() >= 8) {
    ByteCursor magic(bytes);
    if (magic.u16() == kChunkXml) {
      ByteCursor header(bytes);
      header.skip(2);
      if (header.u16() == 8) return parse_axml(bytes);
    }
  }

  std::size_t start = 0;
  if (bytes.size() >= 3 && bytes[0] == 0xef && bytes[1] == 0xbb && bytes[2] == 0xbf) {
    start = 3;  // UTF-8 byte-order mark
  }
  while (start < bytes.size() &&
         (bytes[start] == ' ' || bytes[start] == '\t' || bytes[start] == '\r' ||
          bytes[start] == '\n')) {
    ++start;
  }
  if (start < bytes.size() && bytes[start] == '<') {
    std::string_view text(reinterpret_cast<const char*>(bytes.data()) + start,
                          bytes.size() - start);
    return TextXmlParser(text).parse();
  }
  throw UnknownManifestEncoding();
}

}  // namespace geodiff
