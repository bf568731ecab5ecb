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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geodiff/bytes.hpp"
#include "geodiff/certificate.hpp"
#include "geodiff/dex.hpp"
#include "geodiff/manifest.hpp"

namespace geodiff {

struct FileEntry {
  std::string path;
  std::string content_hash;  // sha-256 hex of the decompressed bytes
  std::uint64_t size_bytes = 0;
};

// Everything the analyses read from one APK, fully materialized. The
// embedded_strings set carries DEX pool strings plus URL-shaped tokens
// found in textual entries, so URL extraction is a pure function of the
// record.
struct ApkArchive {
  std::string source_path;
  std::vector<FileEntry> entries;  // sorted by path, names unique
  ManifestInfo manifest;
  std::vector<DexClassSummary> dex_classes;
  std::optional<CertificateSummary> certificate;
  std::set<std::string> native_lib_names;
  std::set<std::string> embedded_strings;
  std::vector<std::string> warnings;
};

ApkArchive open_apk(const std::string& path);
ApkArchive open_apk_bytes(Bytes data, const std::string& label = "<mem>");

// URL-shaped strings ("http://"/"https://" plus at least one more
// character) across embedded_strings, trailing punctuation stripped.
std::set<std::string> extract_urls(const ApkArchive& archive);

// Scanner behind extract_urls, exposed for direct testing.
std::set<std::string> scan_urls(std::string_view text);

// Canonical JSON rendering of the whole record: sorted keys, sorted
// arrays where order carries no meaning, lowercase hex.
std::string archive_to_json(const ApkArchive& archive);

}  // namespace geodiff
