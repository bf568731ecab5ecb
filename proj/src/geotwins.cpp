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

#include "geodiff/geotwins.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "geodiff/countries.hpp"
#include "geodiff/dhash.hpp"
#include "geodiff/errors.hpp"
#include "geodiff/levenshtein.hpp"
#include "geodiff/raster.hpp"

namespace geodiff {

void HammingIndex::insert(std::uint64_t hash, std::size_t id) {
  if (nodes_.empty()) {
    nodes_.push_back({hash, {id}, {}});
    return;
  }
  std::size_t current = 0;
  for (;;) {
    int d = hamming(hash, nodes_[current].hash);
    if (d == 0) {
      nodes_[current].ids.push_back(id);
      return;
    }
    auto it = nodes_[current].children.find(d);
    if (it == nodes_[current].children.end()) {
      nodes_.push_back({hash, {id}, {}});
      nodes_[current].children.emplace(d, nodes_.size() - 1);
      return;
    }
    current = it->second;
  }
}

std::vector<std::size_t> HammingIndex::within(std::uint64_t hash,
                                              int radius) const {
  std::vector<std::size_t> found;
  if (nodes_.empty()) return found;
  std::vector<std::size_t> stack = {0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    int d = hamming(hash, node.hash);
    if (d <= radius) found.insert(found.end(), node.ids.begin(), node.ids.end());
    // Triangle inequality: a child at edge distance e can hold matches
    // only when |d - e| <= radius.
    auto lo = node.children.lower_bound(d - radius);
    auto hi = node.children.upper_bound(d + radius);
    for (auto it = lo; it != hi; ++it) stack.push_back(it->second);
  }
  return found;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog " + path);
  std::vector<CatalogEntry> catalog;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    std::string where = path + ":" + std::to_string(line_number);
    if (row.is_discarded() || !row.is_object() || !row.contains("package") ||
        !row["package"].is_string()) {
      throw InvalidParameter("bad catalog row at " + where);
    }
    CatalogEntry entry;
    entry.package_name = row["package"].get<std::string>();
    if (row.contains("icon_hash")) {
      entry.icon_hash = hash_from_hex(row["icon_hash"].get<std::string>());
    } else if (row.contains("icon_path")) {
      entry.icon_hash = dhash(load_image(row["icon_path"].get<std::string>()));
    } else {
      throw InvalidParameter("catalog row without icon_hash or icon_path at " +
                             where);
    }
    entry.country_tokens = country_tokens(entry.package_name);
    catalog.push_back(std::move(entry));
  }
  return catalog;
}

namespace {

GeoTwinPair make_pair(const CatalogEntry& x, const CatalogEntry& y, double nld,
                      int distance) {
  GeoTwinPair pair;
  pair.a = std::min(x.package_name, y.package_name);
  pair.b = std::max(x.package_name, y.package_name);
  pair.nld = nld;
  pair.hamming = distance;
  return pair;
}

void sort_and_dedupe(std::vector<GeoTwinPair>& pairs) {
  // Keep the smallest hamming per name pair: duplicate catalog rows can
  // produce the same pair through different icons.
  std::sort(pairs.begin(), pairs.end(), [](const GeoTwinPair& l, const GeoTwinPair& r) {
    return std::tie(l.a, l.b, l.hamming) < std::tie(r.a, r.b, r.hamming);
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end(),
                          [](const GeoTwinPair& l, const GeoTwinPair& r) {
                            return l.a == r.a && l.b == r.b;
                          }),
              pairs.end());
}

}  // namespace

std::vector<GeoTwinPair> find_candidates(const std::vector<CatalogEntry>& catalog,
                                         int hamming_max, double nld_max,
                                         int jobs) {
  // Entries without tokens can never be admitted; keep them out of the index.
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (!catalog[i].country_tokens.empty()) eligible.push_back(i);
  }

  HammingIndex index;
  for (std::size_t e = 0; e < eligible.size(); ++e) {
    index.insert(catalog[eligible[e]].icon_hash, e);
  }

  auto scan_one = [&](std::size_t e, std::vector<GeoTwinPair>& out) {
    const CatalogEntry& self = catalog[eligible[e]];
    for (std::size_t other : index.within(self.icon_hash, hamming_max)) {
      if (other >= e) continue;  // each unordered pair once
      const CatalogEntry& peer = catalog[eligible[other]];
      if (peer.country_tokens == self.country_tokens) continue;
      double nld = normalized_levenshtein(self.package_name, peer.package_name);
      if (nld > nld_max) continue;
      out.push_back(make_pair(self, peer,
                              nld, hamming(self.icon_hash, peer.icon_hash)));
    }
  };

  std::vector<GeoTwinPair> pairs;
  if (jobs <= 1 || eligible.size() < 2) {
    for (std::size_t e = 0; e < eligible.size(); ++e) scan_one(e, pairs);
  } else {
    std::vector<std::vector<GeoTwinPair>> shards(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t e = w; e < eligible.size(); e += jobs) {
          scan_one(e, shards[w]);
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (std::vector<GeoTwinPair>& shard : shards) {
      pairs.insert(pairs.end(), shard.begin(), shard.end());
    }
  }
  sort_and_dedupe(pairs);
  return pairs;
}

std::vector<GeoFamily> cluster_families(const std::vector<GeoTwinPair>& pairs) {
  std::map<std::string, std::size_t> id_of;
  std::vector<std::string> names;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = id_of.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };

  std::vector<std::size_t> parent;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  for (const GeoTwinPair& pair : pairs) {
    std::size_t a = intern(pair.a);
    std::size_t b = intern(pair.b);
    while (parent.size() < names.size()) parent.push_back(parent.size());
    std::size_t ra = find(a);
    std::size_t rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }

  std::map<std::size_t, std::vector<std::string>> components;
  for (std::size_t i = 0; i < names.size(); ++i) {
    components[find(i)].push_back(names[i]);
  }

  std::vector<GeoFamily> families;
  for (auto& [root, members] : components) {
    std::sort(members.begin(), members.end());
    std::uint64_t n = members.size();
    families.push_back({std::move(members), n * (n - 1) / 2});
  }
  std::sort(families.begin(), families.end(),
            [](const GeoFamily& l, const GeoFamily& r) {
              return l.members.front() < r.members.front();
            });
  return families;
}

namespace {

// Seeded bounded draw by rejection: identical results on every platform,
// unlike std::uniform_int_distribution.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace

std::vector<GeoTwinPair> sample_families(const std::vector<GeoTwinPair>& pairs,
                                         const std::vector<GeoFamily>& families,
                                         std::size_t k, std::uint64_t seed) {
  if (k > families.size()) throw InsufficientFamilies(k, families.size());
  if (k == 0) return {};

  std::map<std::string, std::size_t> family_of;
  for (std::size_t f = 0; f < families.size(); ++f) {
    for (const std::string& member : families[f].members) family_of[member] = f;
  }
  std::vector<std::vector<const GeoTwinPair*>> by_family(families.size());
  for (const GeoTwinPair& pair : pairs) {
    auto it = family_of.find(pair.a);
    if (it != family_of.end()) by_family[it->second].push_back(&pair);
  }
  for (auto& list : by_family) {
    std::sort(list.begin(), list.end(),
              [](const GeoTwinPair* l, const GeoTwinPair* r) {
                return std::tie(l->a, l->b) < std::tie(r->a, r->b);
              });
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(families.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + bounded_draw(rng, order.size() - i);
    std::swap(order[i], order[j]);
  }

  std::vector<GeoTwinPair> sample;
  sample.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& candidates = by_family[order[i]];
    if (candidates.empty()) {
      throw InvalidParameter("family without an admitted pair: " +
                             families[order[i]].members.front());
    }
    sample.push_back(*candidates[bounded_draw(rng, candidates.size())]);
  }
  return sample;
}

}  // namespace geodiff
