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

#include "geodiff/datafiles.hpp"

#include <cstdlib>
#include <fstream>

#include "geodiff/errors.hpp"

#ifndef GEODIFF_DEFAULT_DATA_DIR
#define GEODIFF_DEFAULT_DATA_DIR "data"
#endif

namespace geodiff {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

DataFile load_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file " + path);
  DataFile file;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::size_t mark = t.find("version:");
      if (mark != std::string::npos) file.version = trim(t.substr(mark + 8));
      continue;
    }
    file.lines.push_back(std::move(t));
  }
  return file;
}

std::string default_data_dir() {
  const char* env = std::getenv("GEODIFF_DATA_DIR");
  if (env != nullptr && env[0] != '\0') return env;
  return GEODIFF_DEFAULT_DATA_DIR;
}

std::string data_file_path(const std::string& file_name) {
  return default_data_dir() + "/" + file_name;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("short write to " + path);
}

}  // namespace geodiff
