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
#include <string_view>
#include <vector>

#include "geodiff/bytes.hpp"

namespace geodiff {

// One class_def reduced to what file-level comparison needs: a stable
// smali-like path and a digest of the class's executable payload.
struct DexClassSummary {
  std::string class_descriptor;  // "La/b/C;"
  std::string pseudo_path;       // "a/b/C.smali"
  std::string code_hash;         // sha-256 hex over bytecode + static values
};

// Parses class_defs in file order. The code hash covers each method's
// instruction units (class_data order, direct then virtual) followed by
// the raw static_values array; classes with neither hash the empty input.
std::vector<DexClassSummary> list_dex_classes(ByteView dex);

// Every string in the string_ids pool, MUTF-8 bytes taken verbatim.
std::vector<std::string> dex_strings(ByteView dex);

std::string descriptor_to_pseudo_path(std::string_view descriptor);
std::string descriptor_to_dotted(std::string_view descriptor);

}  // namespace geodiff
