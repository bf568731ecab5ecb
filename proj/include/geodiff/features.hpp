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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geodiff/certificate.hpp"

namespace geodiff {

struct ApkArchive;

// The eight comparison groups extracted from one APK. Components are
// role-tagged ("activity:a.b.Main") so identically named classes in
// different roles stay distinct. files maps archive paths to content
// hashes; smali_files maps per-class pseudo-paths to code hashes.
struct FeatureSet {
  std::set<std::string> permissions;
  std::set<std::string> components;
  std::optional<CertificateSummary> certificate;
  std::set<std::string> third_party_libs;
  std::set<std::string> native_libs;
  std::set<std::string> urls;
  std::map<std::string, std::string> files;
  std::map<std::string, std::string> smali_files;

  bool operator==(const FeatureSet&) const = default;
};

// Package-prefix catalog for third-party-library detection. Entries that
// merely extend another entry past a dot ("com.facebook.ads" next to
// "com.facebook") are dropped at load time with a warning so that matching
// yields one detection per library.
class LibraryPrefixCatalog {
 public:
  LibraryPrefixCatalog() = default;
  static LibraryPrefixCatalog from_lines(const std::vector<std::string>& lines,
                                         std::string version = "unversioned");
  static LibraryPrefixCatalog load(const std::string& path);
  static const LibraryPrefixCatalog& bundled();

  const std::set<std::string>& prefixes() const { return prefixes_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::string& version() const { return version_; }

 private:
  std::set<std::string> prefixes_;
  std::vector<std::string> warnings_;
  std::string version_ = "unversioned";
};

// Catalog prefixes with at least one matching class, where a match is
// equality or prefix-plus-dot. Classes inside the app's own namespace
// (first two package segments) never count.
std::set<std::string> detect_third_party_libraries(
    const std::set<std::string>& class_names,
    const LibraryPrefixCatalog& catalog,
    std::string_view app_package = "");

FeatureSet extract_features(const ApkArchive& archive,
                            const LibraryPrefixCatalog& catalog);

// Canonical JSON rendering and its inverse, used by `inspect
// --features-out` and the deviation statistics.
std::string feature_set_to_json(const FeatureSet& features);
FeatureSet feature_set_from_json(const std::string& json);

}  // namespace geodiff
