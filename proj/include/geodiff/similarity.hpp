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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geodiff/features.hpp"

namespace geodiff {

enum class Feature {
  Permissions,
  Components,
  Certificates,
  ThirdPartyLibs,
  NativeLibs,
  Urls,
  Files,
  SmaliFiles,
};

inline constexpr std::array<Feature, 8> kAllFeatures = {
    Feature::Permissions, Feature::Components,  Feature::Certificates,
    Feature::ThirdPartyLibs, Feature::NativeLibs, Feature::Urls,
    Feature::Files,       Feature::SmaliFiles,
};

std::string_view feature_name(Feature feature);

// One scored feature. detail carries the integer counts the score was
// computed from, so any consumer can recompute it exactly.
struct FeatureScore {
  Feature feature;
  double score = 0.0;
  std::map<std::string, std::uint64_t> detail;
};

struct SimilarityReport {
  std::string left_id;
  std::string right_id;
  std::vector<FeatureScore> per_feature;  // exactly 8, fixed feature order
  double overall = 0.0;
};

// |a∩b| / |a∪b|; two empty sets are identical, not undefined.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct ModifiedJaccardResult {
  double score = 1.0;
  std::uint64_t identical = 0;  // same path, same hash
  std::uint64_t similar = 0;    // same path, different hash
  std::uint64_t union_size = 0;
};

// File-set overlap weighting identical files 1.0 and similar files 0.5.
ModifiedJaccardResult modified_jaccard(
    const std::map<std::string, std::string>& left,
    const std::map<std::string, std::string>& right);

struct CertificateScore {
  double score = 1.0;
  std::uint64_t matching = 0;
  std::uint64_t union_keys = 0;
  bool left_present = false;
  bool right_present = false;
};

// Fraction of flattened keys with matching values over the key union.
// Both certificates absent scores 1.0; exactly one absent scores 0.0.
CertificateScore certificate_similarity(
    const std::optional<CertificateSummary>& left,
    const std::optional<CertificateSummary>& right);

SimilarityReport compare(const FeatureSet& left, const FeatureSet& right,
                         const std::string& left_id = "left",
                         const std::string& right_id = "right");

// Scores render with 4 decimal places, ties to even.
std::string format_score(double score);

// Canonical JSON: sorted keys, no insignificant whitespace.
std::string report_to_json(const SimilarityReport& report);
SimilarityReport report_from_json(const std::string& json);

}  // namespace geodiff
