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

namespace geodiff {

struct CatalogEntry {
  std::string package_name;
  std::uint64_t icon_hash = 0;
  std::set<std::string> country_tokens;
};

// Admitted pair, normalized so a < b. nld and hamming record the distances
// that admitted it.
struct GeoTwinPair {
  std::string a;
  std::string b;
  double nld = 0.0;
  int hamming = 0;

  bool operator==(const GeoTwinPair&) const = default;
};

struct GeoFamily {
  std::vector<std::string> members;  // sorted
  std::uint64_t pair_count = 0;      // binom(|members|, 2)
};

// BK-tree over the 64-bit Hamming metric. Entries with equal hashes share
// a node; radius queries visit only children within the metric bounds.
class HammingIndex {
 public:
  void insert(std::uint64_t hash, std::size_t id);
  // Ids of every inserted hash within the given distance of hash.
  std::vector<std::size_t> within(std::uint64_t hash, int radius) const;

 private:
  struct Node {
    std::uint64_t hash = 0;
    std::vector<std::size_t> ids;
    std::map<int, std::size_t> children;  // distance -> node index
  };
  std::vector<Node> nodes_;
};

// Catalog rows: {"package": str, "icon_hash": 16 hex chars} or
// {"package": str, "icon_path": str} (image hashed at load). Country
// tokens are derived from the package name.
std::vector<CatalogEntry> load_catalog(const std::string& path);

// All pairs with icon Hamming <= hamming_max, NLD <= nld_max, and distinct
// non-empty country token sets. Index-accelerated, exact: equals the
// quadratic scan. Output sorted by (a, b). jobs > 1 shards the query loop.
std::vector<GeoTwinPair> find_candidates(const std::vector<CatalogEntry>& catalog,
                                         int hamming_max = 10,
                                         double nld_max = 0.2, int jobs = 1);

// Connected components over the pair graph, sorted by first member.
std::vector<GeoFamily> cluster_families(const std::vector<GeoTwinPair>& pairs);

// k distinct families chosen by seeded draw, one uniformly chosen admitted
// pair from each. Throws InsufficientFamilies when k > |families|.
std::vector<GeoTwinPair> sample_families(const std::vector<GeoTwinPair>& pairs,
                                         const std::vector<GeoFamily>& families,
                                         std::size_t k, std::uint64_t seed);

}  // namespace geodiff
