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
#include <string_view>
#include <unordered_set>

namespace geodiff {

// Country vocabulary: alpha-2 codes and spaceless English names, plus the
// subset of codes that double as common words and therefore match only at
// the first or last segment of a package name.
struct CountryTable {
  std::unordered_set<std::string> tokens;
  std::unordered_set<std::string> edge_only;
  std::string tokens_version;
  std::string edge_only_version;
};

// Loads the bundled tables once; later calls return the cached copy.
const CountryTable& default_country_table();

// Dot-segments of the package name (lowercased) that name a country.
// Edge-only tokens are ignored in interior positions.
std::set<std::string> country_tokens(std::string_view package_name,
                                     const CountryTable& table);
std::set<std::string> country_tokens(std::string_view package_name);

}  // namespace geodiff
