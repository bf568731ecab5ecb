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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "geodiff/apk.hpp"
#include "geodiff/availability.hpp"
#include "geodiff/countries.hpp"
#include "geodiff/datafiles.hpp"
#include "geodiff/digest.hpp"
#include "geodiff/errors.hpp"
#include "geodiff/features.hpp"
#include "geodiff/geotwins.hpp"
#include "geodiff/similarity.hpp"
#include "geodiff/stats.hpp"

namespace {

constexpr char kToolVersion[] = "1.0.0";

std::string version_text() {
  std::string out = std::string("geodiff ") + kToolVersion + "\n";
  const char* files[] = {"library_prefixes.txt", "dangerous_permissions.txt",
                         "countries.txt", "stop_segments.txt",
                         "install_markers.txt"};
  for (const char* file : files) {
    std::string version = "missing";
    try {
      version = geodiff::load_data_file(geodiff::data_file_path(file)).version;
    } catch (const geodiff::Error&) {
    }
    out += std::string(file) + ": " + version + "\n";
  }
  return out;
}

geodiff::LibraryPrefixCatalog load_catalog_or_bundled(const std::string& path) {
  if (path.empty()) return geodiff::LibraryPrefixCatalog::bundled();
  return geodiff::LibraryPrefixCatalog::load(path);
}

// package@sha256-prefix, enough to tell two builds of one package apart.
std::string apk_id(const std::string& path, const geodiff::ApkArchive& archive) {
  std::string file_hash = geodiff::sha256_hex(geodiff::as_bytes(
      geodiff::read_text_file(path)));
  return archive.manifest.package_name + "@" + file_hash.substr(0, 12);
}

void warn_all(const std::vector<std::string>& warnings) {
  for (const std::string& warning : warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
}

std::string format_double(double value, const char* spec) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, value);
  return buffer;
}

// ---- inspect ----

struct InspectArgs {
  std::string apk;
  std::string features_out;
  std::string catalog;
};

int run_inspect(const InspectArgs& args) {
  geodiff::ApkArchive archive = geodiff::open_apk(args.apk);
  warn_all(archive.warnings);
  std::cout << geodiff::archive_to_json(archive) << "\n";
  if (!args.features_out.empty()) {
    geodiff::LibraryPrefixCatalog catalog = load_catalog_or_bundled(args.catalog);
    warn_all(catalog.warnings());
    geodiff::FeatureSet features = geodiff::extract_features(archive, catalog);
    geodiff::write_text_file(args.features_out,
                             geodiff::feature_set_to_json(features) + "\n");
  }
  return 0;
}

// ---- compare ----

struct CompareArgs {
  std::string left;
  std::string right;
  std::string json_out;
  std::string catalog;
};

int run_compare(const CompareArgs& args) {
  geodiff::LibraryPrefixCatalog catalog = load_catalog_or_bundled(args.catalog);
  warn_all(catalog.warnings());

  geodiff::ApkArchive left = geodiff::open_apk(args.left);
  geodiff::ApkArchive right = geodiff::open_apk(args.right);
  warn_all(left.warnings);
  warn_all(right.warnings);

  geodiff::SimilarityReport report = geodiff::compare(
      geodiff::extract_features(left, catalog),
      geodiff::extract_features(right, catalog), apk_id(args.left, left),
      apk_id(args.right, right));
  std::string json = geodiff::report_to_json(report) + "\n";
  if (args.json_out.empty()) {
    std::cout << json;
  } else {
    geodiff::write_text_file(args.json_out, json);
  }
  return 0;
}

// ---- mine ----

struct MineArgs {
  std::string catalog;
  std::string out;
  int hamming_max = 10;
  double nld_max = 0.2;
  std::string families_out;
  int jobs = 1;
  std::size_t sample = 0;
  std::string sample_out;
  std::uint64_t seed = 0;
};

std::string pair_to_json(const geodiff::GeoTwinPair& pair) {
  return "{\"a\":\"" + pair.a + "\",\"b\":\"" + pair.b +
         "\",\"hamming\":" + std::to_string(pair.hamming) +
         ",\"nld\":" + format_double(pair.nld, "%.6f") + "}";
}

int run_mine(const MineArgs& args) {
  std::vector<geodiff::CatalogEntry> catalog = geodiff::load_catalog(args.catalog);
  std::vector<geodiff::GeoTwinPair> pairs = geodiff::find_candidates(
      catalog, args.hamming_max, args.nld_max, args.jobs);

  std::string out;
  for (const geodiff::GeoTwinPair& pair : pairs) out += pair_to_json(pair) + "\n";
  geodiff::write_text_file(args.out, out);

  std::vector<geodiff::GeoFamily> families = geodiff::cluster_families(pairs);
  if (!args.families_out.empty()) {
    std::string json = "[";
    for (std::size_t i = 0; i < families.size(); ++i) {
      if (i > 0) json += ",";
      json += "{\"members\":[";
      for (std::size_t m = 0; m < families[i].members.size(); ++m) {
        if (m > 0) json += ",";
        json += "\"" + families[i].members[m] + "\"";
      }
      json += "],\"pair_count\":" + std::to_string(families[i].pair_count) + "}";
    }
    json += "]\n";
    geodiff::write_text_file(args.families_out, json);
  }
  if (args.sample > 0) {
    std::vector<geodiff::GeoTwinPair> sampled =
        geodiff::sample_families(pairs, families, args.sample, args.seed);
    std::string json;
    for (const geodiff::GeoTwinPair& pair : sampled) json += pair_to_json(pair) + "\n";
    geodiff::write_text_file(args.sample_out, json);
  }
  std::cerr << catalog.size() << " catalog entries, " << pairs.size()
            << " pairs, " << families.size() << " families\n";
  return 0;
}

// ---- probe ----

struct ProbeArgs {
  std::string packages;
  std::string regions;
  std::string fixtures;
  std::string out;
  std::string markers;
  int retries = -1;  // -1: take the regions-file value
};

// Live-mode adapter: store-friendly pacing before every request.
class DelayingFetcher : public geodiff::PageFetcher {
 public:
  DelayingFetcher(geodiff::PageFetcher& inner, int delay_ms)
      : inner_(inner), delay_ms_(delay_ms) {}
  geodiff::FetchResult fetch(const std::string& region,
                             const std::string& package) override {
    if (delay_ms_ > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
    }
    return inner_.fetch(region, package);
  }

 private:
  geodiff::PageFetcher& inner_;
  int delay_ms_;
};

int run_probe(const ProbeArgs& args) {
  geodiff::RegionConfig config = geodiff::load_region_config(args.regions);

  std::vector<std::string> packages;
  for (const std::string& line :
       geodiff::load_data_file(args.packages).lines) {
    packages.push_back(line);
  }

  geodiff::ProbeOptions options;
  options.retries = args.retries >= 0 ? args.retries : config.retries;
  std::string markers_path = args.markers.empty()
                                 ? geodiff::data_file_path("install_markers.txt")
                                 : args.markers;
  options.markers = geodiff::load_data_file(markers_path).lines;

  std::unique_ptr<geodiff::PageFetcher> base;
  std::unique_ptr<geodiff::PageFetcher> fetcher;
  if (!args.fixtures.empty()) {
    fetcher = std::make_unique<geodiff::FixtureFetcher>(args.fixtures);
  } else {
    base = std::make_unique<geodiff::HttpFetcher>(config.url_by_region,
                                                  config.timeout_ms);
    fetcher = std::make_unique<DelayingFetcher>(*base, config.delay_ms);
  }

  std::string out;
  for (const std::string& package : packages) {
    geodiff::AvailabilityRecord record =
        geodiff::probe(package, config.region_ids, *fetcher, options);
    for (const std::string& diagnostic : record.diagnostics) {
      std::cerr << "warning: " << package << " " << diagnostic << "\n";
    }
    out += geodiff::record_to_json(record) + "\n";
  }
  geodiff::write_text_file(args.out, out);
  std::cerr << packages.size() << " packages probed across "
            << config.region_ids.size() << " regions\n";
  return 0;
}

// ---- stats ----

struct StatsAvailabilityArgs {
  std::string records;
  std::string regions_csv;
};

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string current;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

int run_stats_availability(const StatsAvailabilityArgs& args) {
  std::vector<geodiff::AvailabilityRecord> records =
      geodiff::load_records(args.records);

  std::vector<std::string> regions;
  if (!args.regions_csv.empty()) {
    regions = split_csv(args.regions_csv);
  } else {
    std::set<std::string> seen;
    for (const geodiff::AvailabilityRecord& record : records) {
      for (const auto& [region, verdict] : record.per_region) seen.insert(region);
    }
    regions.assign(seen.begin(), seen.end());
  }

  geodiff::ExclusivityStats stats = geodiff::exclusivity_stats(records, regions);
  auto percentage = [&](std::uint64_t count) {
    double pct = stats.retained == 0
                     ? 0.0
                     : 100.0 * static_cast<double>(count) /
                           static_cast<double>(stats.retained);
    return format_double(pct, "%.2f");
  };

  std::cout << "section,key,apps,percentage\n";
  for (std::size_t k = regions.size();; --k) {
    std::cout << "availability," << k << "," << stats.by_available_count.at(k)
              << "," << percentage(stats.by_available_count.at(k)) << "\n";
    if (k == 0) break;
  }
  for (const auto& [region, count] : stats.exclusive_by_region) {
    std::cout << "exclusive," << region << "," << count << ","
              << percentage(count) << "\n";
  }
  std::cerr << stats.total_records << " records, " << stats.excluded_delisted
            << " excluded as delisted, " << stats.retained << " retained\n";
  return 0;
}

struct StatsSampleSizeArgs {
  std::uint64_t population = 0;
  double confidence = 0.95;
  double margin = 0.05;
};

int run_stats_sample_size(const StatsSampleSizeArgs& args) {
  std::uint64_t n = geodiff::sample_size(args.population, args.confidence,
                                         args.margin);
  std::cout << "population,confidence,margin,sample_size\n";
  std::cout << args.population << "," << format_double(args.confidence, "%g")
            << "," << format_double(args.margin, "%g") << "," << n << "\n";
  return 0;
}

struct StatsDeviationArgs {
  std::string features_dir;
  std::string dangerous_list;
};

int run_stats_deviation(const StatsDeviationArgs& args) {
  namespace fs = std::filesystem;
  std::map<std::string, std::vector<geodiff::FeatureSet>> by_region;
  for (const fs::directory_entry& region_dir :
       fs::directory_iterator(args.features_dir)) {
    if (!region_dir.is_directory()) continue;
    std::string region = region_dir.path().filename().string();
    std::vector<fs::path> files;
    for (const fs::directory_entry& file : fs::directory_iterator(region_dir)) {
      if (file.path().extension() == ".json") files.push_back(file.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      by_region[region].push_back(
          geodiff::feature_set_from_json(geodiff::read_text_file(file.string())));
    }
  }
  if (by_region.empty()) {
    throw geodiff::InvalidParameter("no <region>/*.json feature sets under " +
                                    args.features_dir);
  }

  std::string dangerous_path =
      args.dangerous_list.empty()
          ? geodiff::data_file_path("dangerous_permissions.txt")
          : args.dangerous_list;
  geodiff::DataFile dangerous = geodiff::load_data_file(dangerous_path);
  std::set<std::string> dangerous_set(dangerous.lines.begin(),
                                      dangerous.lines.end());

  std::cout << "region,metric,library,deviation\n";
  for (const geodiff::RegionalDeviation& row :
       geodiff::regional_deviation(by_region, dangerous_set)) {
    std::cout << row.region << "," << geodiff::deviation_metric_name(row.metric)
              << "," << row.library << ","
              << format_double(row.deviation, "%.6f") << "\n";
  }
  return 0;
}

struct StatsHistogramArgs {
  std::string reports;
  std::string edges_csv = "0,0.2,0.4,0.6,0.8,0.99,1.0";
};

int run_stats_histogram(const StatsHistogramArgs& args) {
  std::vector<geodiff::SimilarityReport> reports;
  std::ifstream in(args.reports);
  if (!in) throw geodiff::IoError("cannot open reports " + args.reports);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    reports.push_back(geodiff::report_from_json(line));
  }

  std::vector<double> edges;
  for (const std::string& part : split_csv(args.edges_csv)) {
    edges.push_back(std::stod(part));
  }

  std::cout << "feature,bucket_lo,bucket_hi,terminal,count,percentage\n";
  for (const geodiff::ScoreHistogram& hist :
       geodiff::score_histogram(reports, edges)) {
    for (const geodiff::HistogramBucket& bucket : hist.buckets) {
      std::cout << hist.feature << "," << format_double(bucket.lo, "%g") << ","
                << format_double(bucket.hi, "%g") << ","
                << (bucket.terminal ? 1 : 0) << "," << bucket.count << ","
                << format_double(bucket.percentage, "%.2f") << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geographic APK disparity analysis"};
  app.set_version_flag("--version", version_text);
  app.require_subcommand(0, 1);

  InspectArgs inspect_args;
  CLI::App* inspect = app.add_subcommand("inspect", "Dump one APK as canonical JSON");
  inspect->add_option("apk", inspect_args.apk, "APK file")->required();
  inspect->add_option("--features-out", inspect_args.features_out,
                      "Also write the extracted feature set to this file");
  inspect->add_option("--catalog", inspect_args.catalog,
                      "Library prefix catalog (default: bundled)");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "Score two APKs feature by feature");
  compare->add_option("left", compare_args.left, "Left APK")->required();
  compare->add_option("right", compare_args.right, "Right APK")->required();
  compare->add_option("--json", compare_args.json_out,
                      "Write the report here instead of stdout");
  compare->add_option("--catalog", compare_args.catalog,
                      "Library prefix catalog (default: bundled)");

  MineArgs mine_args;
  CLI::App* mine = app.add_subcommand("mine", "Find GeoTwin pairs in an icon catalog");
  mine->add_option("--catalog", mine_args.catalog, "Catalog JSONL")->required();
  mine->add_option("--out", mine_args.out, "Pairs JSONL output")->required();
  mine->add_option("--hamming-max", mine_args.hamming_max, "Icon distance threshold");
  mine->add_option("--nld-max", mine_args.nld_max, "Name distance threshold");
  mine->add_option("--families", mine_args.families_out, "Write GeoFamilies JSON here");
  mine->add_option("--jobs", mine_args.jobs, "Worker threads for the query loop");
  mine->add_option("--sample", mine_args.sample,
                   "Sample one pair from each of this many families");
  mine->add_option("--sample-out", mine_args.sample_out, "Sampled pairs JSONL");
  mine->add_option("--seed", mine_args.seed, "Sampling seed");

  ProbeArgs probe_args;
  CLI::App* probe = app.add_subcommand("probe", "Classify store-page availability per region");
  probe->add_option("--packages", probe_args.packages, "Package list, one per line")
      ->required();
  probe->add_option("--regions", probe_args.regions, "Region config (TOML)")->required();
  probe->add_option("--fixtures", probe_args.fixtures,
                    "Fixture directory (omit to fetch over HTTP)");
  probe->add_option("--out", probe_args.out, "Records JSONL output")->required();
  probe->add_option("--markers", probe_args.markers,
                    "Install marker list (default: bundled)");
  probe->add_option("--retries", probe_args.retries, "Fetch retries");

  CLI::App* stats = app.add_subcommand("stats", "Corpus aggregation");
  stats->require_subcommand(1);

  StatsAvailabilityArgs avail_args;
  CLI::App* avail = stats->add_subcommand("availability", "Exclusivity histogram CSV");
  avail->add_option("records", avail_args.records, "Records JSONL")->required();
  avail->add_option("--regions", avail_args.regions_csv,
                    "Comma-separated region list (default: union over records)");

  StatsSampleSizeArgs size_args;
  CLI::App* size = stats->add_subcommand("sample-size", "Cochran sample size CSV");
  size->add_option("--population", size_args.population, "Population size")->required();
  size->add_option("--confidence", size_args.confidence, "Confidence level");
  size->add_option("--margin", size_args.margin, "Margin of error");

  StatsDeviationArgs dev_args;
  CLI::App* deviation = stats->add_subcommand("deviation", "Regional deviation CSV");
  deviation->add_option("--features-dir", dev_args.features_dir,
                        "Directory of <region>/<app>.json feature sets")
      ->required();
  deviation->add_option("--dangerous-list", dev_args.dangerous_list,
                        "Dangerous permission list (default: bundled)");

  StatsHistogramArgs hist_args;
  CLI::App* histogram = stats->add_subcommand("histogram", "Score distribution CSV");
  histogram->add_option("--reports", hist_args.reports, "Reports JSONL")->required();
  histogram->add_option("--edges", hist_args.edges_csv, "Bucket edges, 0 to 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 1;
  }

  try {
    if (inspect->parsed()) return run_inspect(inspect_args);
    if (compare->parsed()) return run_compare(compare_args);
    if (mine->parsed()) {
      if (mine_args.sample > 0 && mine_args.sample_out.empty()) {
        std::cerr << "error: --sample requires --sample-out\n";
        return 1;
      }
      return run_mine(mine_args);
    }
    if (probe->parsed()) return run_probe(probe_args);
    if (stats->parsed()) {
      if (avail->parsed()) return run_stats_availability(avail_args);
      if (size->parsed()) return run_stats_sample_size(size_args);
      if (deviation->parsed()) return run_stats_deviation(dev_args);
      if (histogram->parsed()) return run_stats_histogram(hist_args);
    }
  } catch (const geodiff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
