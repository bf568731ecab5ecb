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

#include "geodiff/countries.hpp"

#include <cctype>
#include <vector>

#include "geodiff/datafiles.hpp"

namespace geodiff {

namespace {

std::vector<std::string> lower_segments(std::string_view name) {
  std::vector<std::string> segments;
  std::string current;
  for (char c : name) {
    if (c == '.') {
      segments.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  segments.push_back(std::move(current));
  return segments;
}

}  // namespace

const CountryTable& default_country_table() {
  static const CountryTable table = [] {
    CountryTable t;
    DataFile countries = load_data_file(data_file_path("countries.txt"));
    DataFile stops = load_data_file(data_file_path("stop_segments.txt"));
    t.tokens.insert(countries.lines.begin(), countries.lines.end());
    t.edge_only.insert(stops.lines.begin(), stops.lines.end());
    t.tokens_version = countries.version;
    t.edge_only_version = stops.version;
    return t;
  }();
  return table;
}

std::set<std::string> country_tokens(std::string_view package_name,
                                     const CountryTable& table) {
  std::vector<std::string> segments = lower_segments(package_name);
  std::set<std::string> matched;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string& segment = segments[i];
    if (!table.tokens.contains(segment)) continue;
    bool at_edge = i == 0 || i + 1 == segments.size();
    if (!at_edge && table.edge_only.contains(segment)) continue;
    matched.insert(segment);
  }
  return matched;
}

std::set<std::string> country_tokens(std::string_view package_name) {
  return country_tokens(package_name, default_country_table());
}

}  // namespace geodiff
