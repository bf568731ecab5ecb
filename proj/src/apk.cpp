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

#include "geodiff/apk.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "geodiff/digest.hpp"
#include "geodiff/errors.hpp"
#include "geodiff/zip.hpp"

namespace geodiff {

namespace {

constexpr char kManifestPath[] = "AndroidManifest.xml";

bool is_dex_entry(const std::string& name) {
  if (name == "classes.dex") return true;
  if (!name.starts_with("classes") || !name.ends_with(".dex")) return false;
  std::string_view digits(name.data() + 7, name.size() - 11);
  if (digits.empty() || digits.front() == '0') return false;
  return std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

// classes.dex first, then classes2.dex, classes3.dex, ...
std::uint64_t dex_ordinal(const std::string& name) {
  if (name == "classes.dex") return 1;
  std::uint64_t n = 0;
  for (std::size_t i = 7; i + 4 < name.size(); ++i) n = n * 10 + (name[i] - '0');
  return n;
}

bool is_textual_entry(const std::string& name) {
  static const char* kExtensions[] = {".xml",  ".json", ".txt",
                                      ".properties", ".html", ".js"};
  for (const char* ext : kExtensions) {
    if (name.ends_with(ext)) return true;
  }
  return false;
}

bool is_native_lib(const std::string& name) {
  return name.starts_with("lib/") && name.ends_with(".so");
}

// "lib/arm64-v8a/libfoo.so" -> "libfoo" (ABI directories belong to split
// packaging, the library identity does not include them).
std::string native_lib_stem(const std::string& path) {
  std::size_t slash = path.rfind('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  return base.substr(0, base.size() - 3);
}

ApkArchive open_from_reader(ZipReader zip, const std::string& source_path) {
  ApkArchive archive;
  archive.source_path = source_path;
  archive.warnings = zip.warnings();

  bool manifest_seen = false;
  std::vector<std::pair<std::uint64_t, const ZipEntryInfo*>> dex_entries;
  for (const ZipEntryInfo& entry : zip.entries()) {
    Bytes content = zip.read(entry);
    archive.entries.push_back(
        {entry.name, sha256_hex(content), content.size()});

    if (entry.name == kManifestPath) {
      manifest_seen = true;
      archive.manifest = parse_manifest(content);
    }
    if (is_dex_entry(entry.name)) {
      dex_entries.emplace_back(dex_ordinal(entry.name), &entry);
    }
    if (is_native_lib(entry.name)) {
      archive.native_lib_names.insert(native_lib_stem(entry.name));
    }
    if (is_textual_entry(entry.name) && entry.name != kManifestPath) {
      std::set<std::string> urls = scan_urls(to_string(content));
      archive.embedded_strings.insert(urls.begin(), urls.end());
    }
  }
  if (!manifest_seen) throw ManifestMissing(source_path);

  std::sort(dex_entries.begin(), dex_entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [ordinal, entry] : dex_entries) {
    Bytes dex = zip.read(*entry);
    std::vector<DexClassSummary> classes = list_dex_classes(dex);
    archive.dex_classes.insert(archive.dex_classes.end(), classes.begin(),
                               classes.end());
    for (std::string& s : dex_strings(dex)) {
      archive.embedded_strings.insert(std::move(s));
    }
  }

  archive.certificate = find_certificate(zip);

  std::sort(archive.entries.begin(), archive.entries.end(),
            [](const FileEntry& a, const FileEntry& b) { return a.path < b.path; });
  return archive;
}

}  // namespace

ApkArchive open_apk(const std::string& path) {
  return open_from_reader(ZipReader::open_file(path), path);
}

ApkArchive open_apk_bytes(Bytes data, const std::string& label) {
  return open_from_reader(ZipReader::from_bytes(std::move(data), label), label);
}

std::set<std::string> scan_urls(std::string_view text) {
  static constexpr std::string_view kSchemes[] = {"http://", "https://"};
  static constexpr std::string_view kTrailing = ".,;\"'<>)]}";

  std::set<std::string> urls;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t hit = text.find("http", pos);
    if (hit == std::string_view::npos) break;
    std::size_t scheme_len = 0;
    for (std::string_view scheme : kSchemes) {
      if (text.substr(hit, scheme.size()) == scheme) scheme_len = scheme.size();
    }
    if (scheme_len == 0) {
      pos = hit + 4;
      continue;
    }
    std::size_t end = hit;
    while (end < text.size() &&
           static_cast<unsigned char>(text[end]) > 0x20 &&
           static_cast<unsigned char>(text[end]) < 0x7f) {
      ++end;
    }
    std::string_view token = text.substr(hit, end - hit);
    while (!token.empty() && kTrailing.find(token.back()) != std::string_view::npos) {
      token.remove_suffix(1);
    }
    if (token.size() > scheme_len) urls.insert(std::string(token));
    pos = end;
  }
  return urls;
}

std::set<std::string> extract_urls(const ApkArchive& archive) {
  std::set<std::string> urls;
  for (const std::string& s : archive.embedded_strings) {
    std::set<std::string> found = scan_urls(s);
    urls.insert(found.begin(), found.end());
  }
  return urls;
}

std::string archive_to_json(const ApkArchive& archive) {
  nlohmann::json root;
  root["source_path"] = archive.source_path;

  nlohmann::json entries = nlohmann::json::array();
  for (const FileEntry& entry : archive.entries) {
    entries.push_back({{"path", entry.path},
                       {"content_hash", entry.content_hash},
                       {"size_bytes", entry.size_bytes}});
  }
  root["entries"] = std::move(entries);

  root["manifest"] = {{"package_name", archive.manifest.package_name},
                      {"permissions", archive.manifest.permissions},
                      {"activities", archive.manifest.activities},
                      {"services", archive.manifest.services},
                      {"receivers", archive.manifest.receivers},
                      {"providers", archive.manifest.providers}};

  nlohmann::json classes = nlohmann::json::array();
  for (const DexClassSummary& cls : archive.dex_classes) {
    classes.push_back({{"class_descriptor", cls.class_descriptor},
                       {"pseudo_path", cls.pseudo_path},
                       {"code_hash", cls.code_hash}});
  }
  root["dex_classes"] = std::move(classes);

  if (archive.certificate) {
    root["certificate"] = {
        {"flattened", archive.certificate->flattened},
        {"fingerprint_sha256", archive.certificate->fingerprint_sha256}};
  } else {
    root["certificate"] = nullptr;
  }

  root["native_lib_names"] = archive.native_lib_names;
  root["embedded_strings"] = archive.embedded_strings;
  return root.dump();
}

}  // namespace geodiff
