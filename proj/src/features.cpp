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

#include "geodiff/features.hpp"

#include <nlohmann/json.hpp>

#include "geodiff/apk.hpp"
#include "geodiff/datafiles.hpp"
#include "geodiff/errors.hpp"

namespace geodiff {

namespace {

// True when name is prefix itself or extends it past a dot.
bool matches_at_segment(std::string_view name, std::string_view prefix) {
  if (!name.starts_with(prefix)) return false;
  return name.size() == prefix.size() || name[prefix.size()] == '.';
}

std::string first_two_segments(std::string_view package) {
  std::size_t first = package.find('.');
  if (first == std::string_view::npos) return std::string(package);
  std::size_t second = package.find('.', first + 1);
  if (second == std::string_view::npos) return std::string(package);
  return std::string(package.substr(0, second));
}

}  // namespace

LibraryPrefixCatalog LibraryPrefixCatalog::from_lines(
    const std::vector<std::string>& lines, std::string version) {
  LibraryPrefixCatalog catalog;
  catalog.version_ = std::move(version);
  std::set<std::string> sorted(lines.begin(), lines.end());
  for (const std::string& prefix : sorted) {
    bool shadowed = false;
    for (const std::string& kept : catalog.prefixes_) {
      if (matches_at_segment(prefix, kept)) {
        shadowed = prefix != kept;
        break;
      }
    }
    if (shadowed) {
      catalog.warnings_.push_back("catalog prefix '" + prefix +
                                  "' extends an existing entry, dropped");
    } else {
      catalog.prefixes_.insert(prefix);
    }
  }
  return catalog;
}

LibraryPrefixCatalog LibraryPrefixCatalog::load(const std::string& path) {
  DataFile file = load_data_file(path);
  return from_lines(file.lines, file.version);
}

const LibraryPrefixCatalog& LibraryPrefixCatalog::bundled() {
  static const LibraryPrefixCatalog catalog =
      load(data_file_path("library_prefixes.txt"));
  return catalog;
}

std::set<std::string> detect_third_party_libraries(
    const std::set<std::string>& class_names,
    const LibraryPrefixCatalog& catalog,
    std::string_view app_package) {
  std::string own = first_two_segments(app_package);
  std::set<std::string> detected;
  for (const std::string& name : class_names) {
    if (!own.empty() && matches_at_segment(name, own)) continue;
    for (const std::string& prefix : catalog.prefixes()) {
      if (matches_at_segment(name, prefix)) detected.insert(prefix);
    }
  }
  return detected;
}

FeatureSet extract_features(const ApkArchive& archive,
                            const LibraryPrefixCatalog& catalog) {
  FeatureSet features;
  features.permissions = archive.manifest.permissions;
  for (const std::string& name : archive.manifest.activities)
    features.components.insert("activity:" + name);
  for (const std::string& name : archive.manifest.services)
    features.components.insert("service:" + name);
  for (const std::string& name : archive.manifest.receivers)
    features.components.insert("receiver:" + name);
  for (const std::string& name : archive.manifest.providers)
    features.components.insert("provider:" + name);
  features.certificate = archive.certificate;
  features.native_libs = archive.native_lib_names;
  features.urls = extract_urls(archive);

  std::set<std::string> class_names;
  for (const DexClassSummary& cls : archive.dex_classes) {
    class_names.insert(descriptor_to_dotted(cls.class_descriptor));
    features.smali_files[cls.pseudo_path] = cls.code_hash;
  }
  features.third_party_libs = detect_third_party_libraries(
      class_names, catalog, archive.manifest.package_name);

  for (const FileEntry& entry : archive.entries) {
    // Pseudo-paths own the ".smali" suffix; a zip member using it would
    // collide with the per-class map, so such entries stay out of files.
    if (entry.path.ends_with(".smali")) continue;
    features.files[entry.path] = entry.content_hash;
  }
  return features;
}

std::string feature_set_to_json(const FeatureSet& features) {
  nlohmann::json root = {{"permissions", features.permissions},
                         {"components", features.components},
                         {"third_party_libs", features.third_party_libs},
                         {"native_libs", features.native_libs},
                         {"urls", features.urls},
                         {"files", features.files},
                         {"smali_files", features.smali_files}};
  if (features.certificate) {
    root["certificate"] = {
        {"flattened", features.certificate->flattened},
        {"fingerprint_sha256", features.certificate->fingerprint_sha256}};
  } else {
    root["certificate"] = nullptr;
  }
  return root.dump();
}

FeatureSet feature_set_from_json(const std::string& json) {
  nlohmann::json root = nlohmann::json::parse(json, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw InvalidParameter("malformed feature-set JSON");
  }
  FeatureSet features;
  auto read_set = [&](const char* key, std::set<std::string>& out) {
    if (root.contains(key)) out = root[key].get<std::set<std::string>>();
  };
  auto read_map = [&](const char* key, std::map<std::string, std::string>& out) {
    if (root.contains(key)) out = root[key].get<std::map<std::string, std::string>>();
  };
  read_set("permissions", features.permissions);
  read_set("components", features.components);
  read_set("third_party_libs", features.third_party_libs);
  read_set("native_libs", features.native_libs);
  read_set("urls", features.urls);
  read_map("files", features.files);
  read_map("smali_files", features.smali_files);
  if (root.contains("certificate") && root["certificate"].is_object()) {
    CertificateSummary cert;
    cert.flattened = root["certificate"]["flattened"]
                         .get<std::map<std::string, std::string>>();
    cert.fingerprint_sha256 =
        root["certificate"].value("fingerprint_sha256", "");
    features.certificate = std::move(cert);
  }
  return features;
}

}  // namespace geodiff
