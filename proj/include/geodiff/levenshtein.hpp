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

#include <cstddef>
#include <string_view>

namespace geodiff {

// Unit-cost edit distance (insert / delete / substitute).
std::size_t levenshtein(std::string_view a, std::string_view b);

// Edit distance divided by the longer string's length; 0.0 when both empty.
double normalized_levenshtein(std::string_view a, std::string_view b);

}  // namespace geodiff
