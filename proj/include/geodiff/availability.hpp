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
#include <string>
#include <vector>

#include "geodiff/bytes.hpp"

namespace geodiff {

enum class Verdict { Available, Unavailable, Delisted };

std::string_view verdict_name(Verdict verdict);
Verdict verdict_from_name(std::string_view name);

struct FetchResult {
  bool ok = false;       // transport-level success; false means retryable failure
  int status = 0;
  Bytes body;
  std::string error;
};

// Transport abstraction: the live HTTP client and the fixture reader both
// implement it, and tests script it directly.
class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  virtual FetchResult fetch(const std::string& region,
                            const std::string& package) = 0;
};

// Reads <root>/<region>/<package>.html and optional sibling .status file
// (numeric HTTP code, default 200). Neither file present is a transport
// failure, not a 404.
class FixtureFetcher : public PageFetcher {
 public:
  explicit FixtureFetcher(std::string root) : root_(std::move(root)) {}
  FetchResult fetch(const std::string& region, const std::string& package) override;

 private:
  std::string root_;
};

// Plain HTTP fetcher: one URL template per region with "{package}"
// substituted. Region routing beyond URL parameters (VPN exits) is the
// operator's concern.
class HttpFetcher : public PageFetcher {
 public:
  HttpFetcher(std::map<std::string, std::string> url_by_region, int timeout_ms)
      : url_by_region_(std::move(url_by_region)), timeout_ms_(timeout_ms) {}
  FetchResult fetch(const std::string& region, const std::string& package) override;

 private:
  std::map<std::string, std::string> url_by_region_;
  int timeout_ms_;
};

// 404 is Delisted; other error statuses are Unavailable; success statuses
// are Available exactly when any marker occurs in the body (case-sensitive
// byte search).
Verdict classify_page(int status, ByteView body,
                      const std::vector<std::string>& markers);

struct AvailabilityRecord {
  std::string package;
  std::map<std::string, Verdict> per_region;
  std::string probed_at;  // UTC ISO-8601
  std::vector<std::string> diagnostics;
};

struct ProbeOptions {
  std::vector<std::string> markers;
  int retries = 2;  // additional attempts after a transport failure
};

// One verdict per region; transport failures are retried, then recorded
// as Unavailable with a diagnostic. GEODIFF_FROZEN_TIME overrides the
// probed_at stamp for reproducible runs.
AvailabilityRecord probe(const std::string& package,
                         const std::vector<std::string>& regions,
                         PageFetcher& fetcher, const ProbeOptions& options);

struct ExclusivityStats {
  std::uint64_t total_records = 0;
  std::uint64_t retained = 0;           // records with no Delisted verdict
  std::uint64_t excluded_delisted = 0;
  std::map<std::size_t, std::uint64_t> by_available_count;  // 0..|regions|
  std::map<std::string, std::uint64_t> exclusive_by_region;
};

// Availability histogram over retained records, bucketed by the number of
// regions where the app is Available, plus per-region exclusive counts.
ExclusivityStats exclusivity_stats(const std::vector<AvailabilityRecord>& records,
                                   const std::vector<std::string>& regions);

std::string record_to_json(const AvailabilityRecord& record);
std::vector<AvailabilityRecord> load_records(const std::string& path);

// Region list and probe settings from a minimal TOML subset:
// top-level "key = value" lines and [region.<id>] sections with url keys.
struct RegionConfig {
  std::vector<std::string> region_ids;              // file order
  std::map<std::string, std::string> url_by_region;
  int retries = 2;
  int timeout_ms = 10000;
  int delay_ms = 2000;
};

RegionConfig load_region_config(const std::string& path);

}  // namespace geodiff
