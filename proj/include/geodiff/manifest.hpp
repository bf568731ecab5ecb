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

#include <set>
#include <string>

#include "geodiff/bytes.hpp"

namespace geodiff {

struct ManifestInfo {
  std::string package_name;
  std::set<std::string> permissions;
  std::set<std::string> activities;
  std::set<std::string> services;
  std::set<std::string> receivers;
  std::set<std::string> providers;

  bool operator==(const ManifestInfo&) const = default;
};

// Accepts both manifest encodings: binary AXML (magic 0x00080003) and
// plaintext XML. Component class names are expanded against the package
// name (".Main" and bare names become fully qualified).
ManifestInfo parse_manifest(ByteView bytes);

// Relative-name expansion rule, exposed for reuse and testing.
std::string expand_class_name(const std::string& package,
                              const std::string& name);

}  // namespace geodiff
