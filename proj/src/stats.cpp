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

#include "geodiff/stats.hpp"

#include <cmath>

#include "geodiff/errors.hpp"

namespace geodiff {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("quantile probability out of (0,1)");
  // Acklam's rational approximation, relative error below 1.15e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double q, r;
  if (p < p_low) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

std::uint64_t sample_size(std::uint64_t population, double confidence,
                          double margin, double proportion) {
  if (population < 1) throw InvalidParameter("population must be >= 1");
  if (!(margin > 0.0 && margin < 1.0)) throw InvalidParameter("margin out of (0,1)");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw InvalidParameter("confidence out of (0,1)");
  if (!(proportion > 0.0 && proportion < 1.0))
    throw InvalidParameter("proportion out of (0,1)");

  double z = confidence == 0.95 ? 1.959964
                                : normal_quantile(0.5 + confidence / 2.0);
  double n0 = z * z * proportion * (1.0 - proportion) / (margin * margin);
  double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
  return static_cast<std::uint64_t>(std::ceil(n));
}

std::string_view deviation_metric_name(DeviationMetric metric) {
  switch (metric) {
    case DeviationMetric::TotalPermissions: return "TotalPermissions";
    case DeviationMetric::DangerousPermissions: return "DangerousPermissions";
    case DeviationMetric::LibraryFrequency: return "LibraryFrequency";
  }
  return "Unknown";
}

std::vector<RegionalDeviation> regional_deviation(
    const std::map<std::string, std::vector<FeatureSet>>& features_by_region,
    const std::set<std::string>& dangerous_list) {
  struct Sums {
    double total = 0.0;
    double dangerous = 0.0;
    std::map<std::string, double> library_hits;
    std::size_t apps = 0;
  };

  auto count_dangerous = [&](const FeatureSet& fs) {
    std::size_t n = 0;
    for (const std::string& p : fs.permissions) n += dangerous_list.count(p);
    return n;
  };

  Sums global;
  std::map<std::string, Sums> per_region;
  std::set<std::string> all_libraries;
  for (const auto& [region, sets] : features_by_region) {
    Sums& sums = per_region[region];
    for (const FeatureSet& fs : sets) {
      sums.apps += 1;
      sums.total += static_cast<double>(fs.permissions.size());
      sums.dangerous += static_cast<double>(count_dangerous(fs));
      for (const std::string& lib : fs.third_party_libs) {
        sums.library_hits[lib] += 1.0;
        all_libraries.insert(lib);
      }
      global.apps += 1;
      global.total += static_cast<double>(fs.permissions.size());
      global.dangerous += static_cast<double>(count_dangerous(fs));
      for (const std::string& lib : fs.third_party_libs) global.library_hits[lib] += 1.0;
    }
  }

  auto mean = [](double sum, std::size_t n) {
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
  };
  double global_total = mean(global.total, global.apps);
  double global_dangerous = mean(global.dangerous, global.apps);

  std::vector<RegionalDeviation> rows;
  for (const auto& [region, sums] : per_region) {
    rows.push_back({region, DeviationMetric::TotalPermissions, "",
                    mean(sums.total, sums.apps) - global_total});
    rows.push_back({region, DeviationMetric::DangerousPermissions, "",
                    mean(sums.dangerous, sums.apps) - global_dangerous});
    for (const std::string& lib : all_libraries) {
      double regional = sums.library_hits.count(lib)
                            ? mean(sums.library_hits.at(lib), sums.apps)
                            : 0.0;
      double overall = mean(global.library_hits.at(lib), global.apps);
      rows.push_back(
          {region, DeviationMetric::LibraryFrequency, lib, regional - overall});
    }
  }
  return rows;
}

std::vector<ScoreHistogram> score_histogram(
    const std::vector<SimilarityReport>& reports,
    const std::vector<double>& bucket_edges) {
  if (bucket_edges.size() < 2) throw InvalidBuckets("need at least two edges");
  for (std::size_t i = 1; i < bucket_edges.size(); ++i) {
    if (!(bucket_edges[i] > bucket_edges[i - 1]))
      throw InvalidBuckets("edges must be strictly increasing");
  }
  if (bucket_edges.front() != 0.0 || bucket_edges.back() != 1.0)
    throw InvalidBuckets("edges must cover [0,1]");

  std::size_t range_count = bucket_edges.size() - 1;
  auto make_buckets = [&] {
    std::vector<HistogramBucket> buckets(range_count + 1);
    for (std::size_t i = 0; i < range_count; ++i) {
      buckets[i].lo = bucket_edges[i];
      buckets[i].hi = bucket_edges[i + 1];
    }
    buckets.back().lo = 1.0;
    buckets.back().hi = 1.0;
    buckets.back().terminal = true;
    return buckets;
  };

  auto bucket_index = [&](double score) {
    if (score >= 1.0) return range_count;  // terminal bucket
    std::size_t i = range_count - 1;
    while (i > 0 && score < bucket_edges[i]) --i;
    return i;
  };

  std::vector<ScoreHistogram> histograms;
  for (Feature feature : kAllFeatures) {
    histograms.push_back({std::string(feature_name(feature)), make_buckets()});
  }
  histograms.push_back({"Overall", make_buckets()});

  for (const SimilarityReport& report : reports) {
    for (const FeatureScore& fs : report.per_feature) {
      for (ScoreHistogram& hist : histograms) {
        if (hist.feature == feature_name(fs.feature)) {
          hist.buckets[bucket_index(fs.score)].count += 1;
          break;
        }
      }
    }
    histograms.back().buckets[bucket_index(report.overall)].count += 1;
  }

  if (!reports.empty()) {
    for (ScoreHistogram& hist : histograms) {
      for (HistogramBucket& bucket : hist.buckets) {
        bucket.percentage = 100.0 * static_cast<double>(bucket.count) /
                            static_cast<double>(reports.size());
      }
    }
  }
  return histograms;
}

}  // namespace geodiff
