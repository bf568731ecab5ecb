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

#include "geodiff/availability.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "geodiff/errors.hpp"

namespace geodiff {

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Available: return "Available";
    case Verdict::Unavailable: return "Unavailable";
    case Verdict::Delisted: return "Delisted";
  }
  return "Unknown";
}

Verdict verdict_from_name(std::string_view name) {
  if (name == "Available") return Verdict::Available;
  if (name == "Unavailable") return Verdict::Unavailable;
  if (name == "Delisted") return Verdict::Delisted;
  throw InvalidParameter("unknown verdict '" + std::string(name) + "'");
}

FetchResult FixtureFetcher::fetch(const std::string& region,
                                  const std::string& package) {
  std::string base = root_ + "/" + region + "/" + package;
  FetchResult result;

  std::ifstream status_file(base + ".status");
  bool have_status = static_cast<bool>(status_file);
  int status = 200;
  if (have_status) status_file >> status;

  std::ifstream html(base + ".html", std::ios::binary);
  bool have_html = static_cast<bool>(html);
  if (!have_status && !have_html) {
    result.error = "no fixture for " + region + "/" + package;
    return result;
  }
  if (have_html) {
    result.body.assign(std::istreambuf_iterator<char>(html),
                       std::istreambuf_iterator<char>());
  }
  result.status = status;
  result.ok = true;
  return result;
}

Verdict classify_page(int status, ByteView body,
                      const std::vector<std::string>& markers) {
  if (status == 404) return Verdict::Delisted;
  if (status >= 400) return Verdict::Unavailable;
  std::string_view text(reinterpret_cast<const char*>(body.data()), body.size());
  for (const std::string& marker : markers) {
    if (!marker.empty() && text.find(marker) != std::string_view::npos) {
      return Verdict::Available;
    }
  }
  return Verdict::Unavailable;
}

namespace {

std::string current_utc_timestamp() {
  const char* frozen = std::getenv("GEODIFF_FROZEN_TIME");
  if (frozen != nullptr && frozen[0] != '\0') return frozen;
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buffer;
}

}  // namespace

AvailabilityRecord probe(const std::string& package,
                         const std::vector<std::string>& regions,
                         PageFetcher& fetcher, const ProbeOptions& options) {
  AvailabilityRecord record;
  record.package = package;
  record.probed_at = current_utc_timestamp();

  for (const std::string& region : regions) {
    FetchResult result;
    for (int attempt = 0; attempt <= options.retries; ++attempt) {
      result = fetcher.fetch(region, package);
      if (result.ok) break;
    }
    if (!result.ok) {
      record.per_region[region] = Verdict::Unavailable;
      record.diagnostics.push_back(region + ": fetch failed after " +
                                   std::to_string(options.retries + 1) +
                                   " attempts (" + result.error + ")");
      continue;
    }
    if (result.status >= 400 && result.status != 404) {
      record.diagnostics.push_back(region + ": http status " +
                                   std::to_string(result.status));
    }
    record.per_region[region] =
        classify_page(result.status, result.body, options.markers);
  }
  return record;
}

ExclusivityStats exclusivity_stats(const std::vector<AvailabilityRecord>& records,
                                   const std::vector<std::string>& regions) {
  ExclusivityStats stats;
  stats.total_records = records.size();
  for (std::size_t k = 0; k <= regions.size(); ++k) stats.by_available_count[k] = 0;
  for (const std::string& region : regions) stats.exclusive_by_region[region] = 0;

  for (const AvailabilityRecord& record : records) {
    bool delisted = false;
    std::size_t available = 0;
    std::string only_region;
    for (const std::string& region : regions) {
      auto it = record.per_region.find(region);
      if (it == record.per_region.end()) continue;
      if (it->second == Verdict::Delisted) delisted = true;
      if (it->second == Verdict::Available) {
        ++available;
        only_region = region;
      }
    }
    if (delisted) {
      ++stats.excluded_delisted;
      continue;
    }
    ++stats.retained;
    ++stats.by_available_count[available];
    if (available == 1) ++stats.exclusive_by_region[only_region];
  }
  return stats;
}

std::string record_to_json(const AvailabilityRecord& record) {
  nlohmann::json per_region;
  for (const auto& [region, verdict] : record.per_region) {
    per_region[region] = verdict_name(verdict);
  }
  nlohmann::json root = {{"package", record.package},
                         {"per_region", std::move(per_region)},
                         {"probed_at", record.probed_at}};
  if (!record.diagnostics.empty()) root["diagnostics"] = record.diagnostics;
  return root.dump();
}

std::vector<AvailabilityRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open records " + path);
  std::vector<AvailabilityRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.contains("package") ||
        !row.contains("per_region")) {
      throw InvalidParameter("bad availability record at " + path + ":" +
                             std::to_string(line_number));
    }
    AvailabilityRecord record;
    record.package = row["package"].get<std::string>();
    for (const auto& [region, verdict] : row["per_region"].items()) {
      record.per_region[region] = verdict_from_name(verdict.get<std::string>());
    }
    if (row.contains("probed_at")) record.probed_at = row["probed_at"];
    records.push_back(std::move(record));
  }
  return records;
}

RegionConfig load_region_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open regions file " + path);

  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  auto unquote = [](std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\''))) {
      return s.substr(1, s.size() - 2);
    }
    return s;
  };

  RegionConfig config;
  std::string section;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      if (section.starts_with("region.")) {
        std::string id = section.substr(7);
        config.region_ids.push_back(id);
        config.url_by_region[id] = "";
      }
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter("bad regions line: " + t);
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = unquote(trim(t.substr(eq + 1)));
    if (section.empty()) {
      if (key == "retries") config.retries = std::atoi(value.c_str());
      else if (key == "timeout_ms") config.timeout_ms = std::atoi(value.c_str());
      else if (key == "delay_ms") config.delay_ms = std::atoi(value.c_str());
    } else if (section.starts_with("region.") && key == "url") {
      config.url_by_region[section.substr(7)] = value;
    }
  }
  if (config.region_ids.empty()) {
    throw InvalidParameter("regions file defines no [region.*] sections");
  }
  return config;
}

}  // namespace geodiff
