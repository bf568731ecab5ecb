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

#include <string>
#include <vector>

namespace geodiff {

// One bundled table: comment/blank lines stripped, payload lines trimmed.
// The version string comes from a "# version: <v>" comment when present.
struct DataFile {
  std::string version = "unversioned";
  std::vector<std::string> lines;
};

DataFile load_data_file(const std::string& path);

// Bundled-table directory: GEODIFF_DATA_DIR overrides the compiled-in
// default (the data/ directory this build was configured with).
std::string default_data_dir();
std::string data_file_path(const std::string& file_name);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace geodiff
