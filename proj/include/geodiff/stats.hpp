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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "geodiff/similarity.hpp"

namespace geodiff {

// Cochran's sample size with finite-population correction, rounded up.
// The 95% z-value is pinned to 1.959964; other confidence levels use a
// rational approximation of the normal quantile.
std::uint64_t sample_size(std::uint64_t population, double confidence = 0.95,
                          double margin = 0.05, double proportion = 0.5);

// Two-sided normal quantile for probability p in (0,1).
double normal_quantile(double p);

enum class DeviationMetric {
  TotalPermissions,
  DangerousPermissions,
  LibraryFrequency,
};

std::string_view deviation_metric_name(DeviationMetric metric);

struct RegionalDeviation {
  std::string region;
  DeviationMetric metric = DeviationMetric::TotalPermissions;
  std::string library;  // set only for LibraryFrequency
  double deviation = 0.0;
};

// Per region: mean permission count, mean dangerous-permission count, and
// per-library usage fraction, each minus the global mean over all feature
// sets. Rows are ordered by region, then metric, then library name.
std::vector<RegionalDeviation> regional_deviation(
    const std::map<std::string, std::vector<FeatureSet>>& features_by_region,
    const std::set<std::string>& dangerous_list);

struct HistogramBucket {
  double lo = 0.0;
  double hi = 0.0;
  bool terminal = false;  // the dedicated {1.0} bucket
  std::uint64_t count = 0;
  double percentage = 0.0;
};

struct ScoreHistogram {
  std::string feature;  // feature name or "Overall"
  std::vector<HistogramBucket> buckets;
};

// Buckets [e0,e1), [e1,e2), ..., plus a terminal bucket holding exact 1.0
// scores. Produces one histogram per feature and one for Overall. Edges
// must be strictly increasing from 0 to 1; throws InvalidBuckets otherwise.
std::vector<ScoreHistogram> score_histogram(
    const std::vector<SimilarityReport>& reports,
    const std::vector<double>& bucket_edges);

}  // namespace geodiff
