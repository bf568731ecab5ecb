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

#include "geodiff/similarity.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "geodiff/errors.hpp"

namespace geodiff {

std::string_view feature_name(Feature feature) {
  switch (feature) {
    case Feature::Permissions: return "Permissions";
    case Feature::Components: return "Components";
    case Feature::Certificates: return "Certificates";
    case Feature::ThirdPartyLibs: return "ThirdPartyLibs";
    case Feature::NativeLibs: return "NativeLibs";
    case Feature::Urls: return "Urls";
    case Feature::Files: return "Files";
    case Feature::SmaliFiles: return "SmaliFiles";
  }
  return "Unknown";
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t intersection = 0;
  for (const std::string& item : a) intersection += b.count(item);
  std::size_t union_size = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(union_size);
}

ModifiedJaccardResult modified_jaccard(
    const std::map<std::string, std::string>& left,
    const std::map<std::string, std::string>& right) {
  ModifiedJaccardResult result;
  std::size_t shared = 0;
  for (const auto& [path, hash] : left) {
    auto it = right.find(path);
    if (it == right.end()) continue;
    ++shared;
    if (it->second == hash) {
      ++result.identical;
    } else {
      ++result.similar;
    }
  }
  result.union_size = left.size() + right.size() - shared;
  result.score = result.union_size == 0
                     ? 1.0
                     : (static_cast<double>(result.identical) +
                        0.5 * static_cast<double>(result.similar)) /
                           static_cast<double>(result.union_size);
  return result;
}

CertificateScore certificate_similarity(
    const std::optional<CertificateSummary>& left,
    const std::optional<CertificateSummary>& right) {
  CertificateScore result;
  result.left_present = left.has_value();
  result.right_present = right.has_value();
  if (!left && !right) {
    result.score = 1.0;
    return result;
  }
  if (!left || !right) {
    result.score = 0.0;
    return result;
  }
  std::set<std::string> keys;
  for (const auto& [key, value] : left->flattened) keys.insert(key);
  for (const auto& [key, value] : right->flattened) keys.insert(key);
  for (const std::string& key : keys) {
    auto l = left->flattened.find(key);
    auto r = right->flattened.find(key);
    if (l != left->flattened.end() && r != right->flattened.end() &&
        l->second == r->second) {
      ++result.matching;
    }
  }
  result.union_keys = keys.size();
  result.score = result.union_keys == 0
                     ? 1.0
                     : static_cast<double>(result.matching) /
                           static_cast<double>(result.union_keys);
  return result;
}

namespace {

FeatureScore score_sets(Feature feature, const std::set<std::string>& a,
                        const std::set<std::string>& b) {
  FeatureScore fs;
  fs.feature = feature;
  std::size_t intersection = 0;
  for (const std::string& item : a) intersection += b.count(item);
  fs.detail["intersection"] = intersection;
  fs.detail["union"] = a.size() + b.size() - intersection;
  fs.score = jaccard(a, b);
  return fs;
}

FeatureScore score_files(Feature feature,
                         const std::map<std::string, std::string>& a,
                         const std::map<std::string, std::string>& b) {
  FeatureScore fs;
  fs.feature = feature;
  ModifiedJaccardResult r = modified_jaccard(a, b);
  fs.detail["identical"] = r.identical;
  fs.detail["similar"] = r.similar;
  fs.detail["union"] = r.union_size;
  fs.score = r.score;
  return fs;
}

}  // namespace

SimilarityReport compare(const FeatureSet& left, const FeatureSet& right,
                         const std::string& left_id,
                         const std::string& right_id) {
  SimilarityReport report;
  report.left_id = left_id;
  report.right_id = right_id;
  report.per_feature.reserve(kAllFeatures.size());

  report.per_feature.push_back(
      score_sets(Feature::Permissions, left.permissions, right.permissions));
  report.per_feature.push_back(
      score_sets(Feature::Components, left.components, right.components));

  FeatureScore certs;
  certs.feature = Feature::Certificates;
  CertificateScore cs = certificate_similarity(left.certificate, right.certificate);
  certs.detail["left_present"] = cs.left_present ? 1 : 0;
  certs.detail["right_present"] = cs.right_present ? 1 : 0;
  certs.detail["matching"] = cs.matching;
  certs.detail["union"] = cs.union_keys;
  certs.score = cs.score;
  report.per_feature.push_back(std::move(certs));

  report.per_feature.push_back(score_sets(
      Feature::ThirdPartyLibs, left.third_party_libs, right.third_party_libs));
  report.per_feature.push_back(
      score_sets(Feature::NativeLibs, left.native_libs, right.native_libs));
  report.per_feature.push_back(score_sets(Feature::Urls, left.urls, right.urls));
  report.per_feature.push_back(
      score_files(Feature::Files, left.files, right.files));
  report.per_feature.push_back(
      score_files(Feature::SmaliFiles, left.smali_files, right.smali_files));

  double sum = 0.0;
  for (const FeatureScore& fs : report.per_feature) sum += fs.score;
  report.overall = sum / static_cast<double>(report.per_feature.size());
  return report;
}

std::string format_score(double score) {
  // nearbyint under the default rounding mode resolves exact halves to
  // even, so 0.06125 -> "0.0612" and 0.06375 -> "0.0638".
  double scaled = std::nearbyint(score * 10000.0);
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", scaled / 10000.0);
  return buffer;
}

namespace {

void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

}  // namespace

std::string report_to_json(const SimilarityReport& report) {
  std::string out = "{\"features\":[";
  bool first = true;
  for (const FeatureScore& fs : report.per_feature) {
    if (!first) out.push_back(',');
    first = false;
    out += "{\"detail\":{";
    bool first_detail = true;
    for (const auto& [key, value] : fs.detail) {
      if (!first_detail) out.push_back(',');
      first_detail = false;
      append_json_string(out, key);
      out.push_back(':');
      out += std::to_string(value);
    }
    out += "},\"feature\":";
    append_json_string(out, feature_name(fs.feature));
    out += ",\"score\":";
    out += format_score(fs.score);
    out.push_back('}');
  }
  out += "],\"left_id\":";
  append_json_string(out, report.left_id);
  out += ",\"overall\":";
  out += format_score(report.overall);
  out += ",\"right_id\":";
  append_json_string(out, report.right_id);
  out.push_back('}');
  return out;
}

SimilarityReport report_from_json(const std::string& json) {
  nlohmann::json root = nlohmann::json::parse(json, nullptr, false);
  if (root.is_discarded() || !root.is_object() || !root.contains("features")) {
    throw InvalidParameter("malformed similarity report JSON");
  }
  SimilarityReport report;
  report.left_id = root.value("left_id", "");
  report.right_id = root.value("right_id", "");
  report.overall = root.value("overall", 0.0);
  for (const nlohmann::json& item : root["features"]) {
    FeatureScore fs;
    std::string name = item.value("feature", "");
    bool known = false;
    for (Feature feature : kAllFeatures) {
      if (name == feature_name(feature)) {
        fs.feature = feature;
        known = true;
      }
    }
    if (!known) throw InvalidParameter("unknown feature '" + name + "'");
    fs.score = item.value("score", 0.0);
    if (item.contains("detail")) {
      fs.detail = item["detail"].get<std::map<std::string, std::uint64_t>>();
    }
    report.per_feature.push_back(std::move(fs));
  }
  return report;
}

}  // namespace geodiff
