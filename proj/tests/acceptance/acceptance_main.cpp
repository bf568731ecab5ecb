// Acceptance gate: every release-blocking behavior in one binary, one
// verdict line per criterion. Exit status is the number of failures, so
// the harness and CI read the same signal.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geodiff/apk.hpp"
#include "geodiff/availability.hpp"
#include "geodiff/dhash.hpp"
#include "geodiff/features.hpp"
#include "geodiff/geotwins.hpp"
#include "geodiff/levenshtein.hpp"
#include "geodiff/raster.hpp"
#include "geodiff/similarity.hpp"
#include "geodiff/stats.hpp"

#include "apk_builder.hpp"
#include "cert_factory.hpp"
#include "images.hpp"
#include "oracles.hpp"
#include "run_cli.hpp"
#include "temp_dir.hpp"

namespace {

using geodiff::CatalogEntry;
using geodiff::FeatureSet;
using geodiff::SimilarityReport;

struct Check {
  bool ok = true;
  std::string why;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      why = message;
    }
  }
};

// ---- random inputs shared by the oracle criteria ----

std::set<std::string> random_set(std::mt19937_64& rng, int max_size) {
  std::uniform_int_distribution<int> size_dist(0, max_size);
  std::uniform_int_distribution<int> item_dist(0, 19);
  std::set<std::string> out;
  int n = size_dist(rng);
  for (int i = 0; i < n; ++i) out.insert("item" + std::to_string(item_dist(rng)));
  return out;
}

std::map<std::string, std::string> random_file_map(std::mt19937_64& rng,
                                                   int max_size) {
  std::uniform_int_distribution<int> size_dist(0, max_size);
  std::uniform_int_distribution<int> path_dist(0, 15);
  std::uniform_int_distribution<int> hash_dist(0, 3);
  std::map<std::string, std::string> out;
  int n = size_dist(rng);
  for (int i = 0; i < n; ++i) {
    out["path" + std::to_string(path_dist(rng))] =
        "hash" + std::to_string(hash_dist(rng));
  }
  return out;
}

FeatureSet random_feature_set(std::mt19937_64& rng) {
  FeatureSet fs;
  fs.permissions = random_set(rng, 12);
  fs.components = random_set(rng, 12);
  std::uniform_int_distribution<int> presence(0, 3);
  if (presence(rng) != 0) {
    geodiff::CertificateSummary summary;
    std::uniform_int_distribution<int> key_dist(0, 6);
    std::uniform_int_distribution<int> value_dist(0, 2);
    int keys = key_dist(rng);
    for (int k = 0; k < keys; ++k) {
      summary.flattened["key" + std::to_string(key_dist(rng))] =
          "value" + std::to_string(value_dist(rng));
    }
    fs.certificate = std::move(summary);
  }
  fs.third_party_libs = random_set(rng, 12);
  fs.native_libs = random_set(rng, 12);
  fs.urls = random_set(rng, 12);
  fs.files = random_file_map(rng, 12);
  fs.smali_files = random_file_map(rng, 12);
  return fs;
}

std::vector<CatalogEntry> random_catalog(std::mt19937_64& rng, int size) {
  std::vector<std::uint64_t> base_hashes;
  for (int i = 0; i < 8; ++i) base_hashes.push_back(rng());
  const std::vector<std::string> stems = {
      "alpha.vendor.product", "beta.vendor.product", "games.studio.title",
      "tools.maker.utility", "media.house.player"};
  const std::vector<std::set<std::string>> token_pool = {
      {},           {"jp"}, {"us"}, {"de"},
      {"jp", "us"}, {"sk"}, {"cz"}, {"au"}};

  std::uniform_int_distribution<std::size_t> base_dist(0, base_hashes.size() - 1);
  std::uniform_int_distribution<int> flip_dist(0, 12);
  std::uniform_int_distribution<int> bit_dist(0, 63);
  std::uniform_int_distribution<std::size_t> stem_dist(0, stems.size() - 1);
  std::uniform_int_distribution<std::size_t> token_dist(0, token_pool.size() - 1);
  std::uniform_int_distribution<int> mutate_dist(0, 3);
  std::uniform_int_distribution<int> reuse_dist(0, 19);

  std::vector<CatalogEntry> catalog;
  for (int i = 0; i < size; ++i) {
    if (!catalog.empty() && reuse_dist(rng) == 0) {
      CatalogEntry dup = catalog[static_cast<std::size_t>(i) % catalog.size()];
      dup.icon_hash ^= 1ull << bit_dist(rng);
      catalog.push_back(std::move(dup));
      continue;
    }
    std::uint64_t hash = base_hashes[base_dist(rng)];
    int flips = flip_dist(rng);
    for (int f = 0; f < flips; ++f) hash ^= 1ull << bit_dist(rng);

    std::string name = stems[stem_dist(rng)];
    std::uniform_int_distribution<std::size_t> pos_dist(0, name.size() - 1);
    std::uniform_int_distribution<int> letter(0, 25);
    int mutations = mutate_dist(rng);
    for (int m = 0; m < mutations; ++m) {
      name[pos_dist(rng)] = static_cast<char>('a' + letter(rng));
    }
    name += std::to_string(i % 9);

    CatalogEntry entry;
    entry.package_name = std::move(name);
    entry.icon_hash = hash;
    entry.country_tokens = token_pool[token_dist(rng)];
    catalog.push_back(std::move(entry));
  }
  return catalog;
}

// ---- criteria ----

Check criterion_sample_size() {
  Check check;
  check.require(geodiff::sample_size(48178) == 382,
                "sample_size(48178) != 382");
  check.require(geodiff::sample_size(81963) == 383,
                "sample_size(81963) != 383");
  return check;
}

Check criterion_family_identity() {
  Check check;
  for (std::uint64_t n = 2; n <= 12; ++n) {
    std::vector<geodiff::GeoTwinPair> pairs;
    for (std::uint64_t i = 1; i < n; ++i) {
      geodiff::GeoTwinPair pair;
      pair.a = "member" + std::to_string(i - 1) + ".app";
      pair.b = "member" + std::to_string(i) + ".app";
      pairs.push_back(std::move(pair));
    }
    auto families = geodiff::cluster_families(pairs);
    check.require(families.size() == 1,
                  "n=" + std::to_string(n) + " produced " +
                      std::to_string(families.size()) + " families");
    if (families.size() != 1) continue;
    check.require(families[0].members.size() == n,
                  "n=" + std::to_string(n) + " family has wrong size");
    check.require(families[0].pair_count == n * (n - 1) / 2,
                  "n=" + std::to_string(n) + " pair_count != n(n-1)/2");
    if (n == 3) {
      check.require(families[0].pair_count == 3, "3-member family != 3 pairs");
    }
    if (n == 9) {
      check.require(families[0].pair_count == 36, "9-member family != 36 pairs");
    }
  }
  return check;
}

Check criterion_scoring_oracles() {
  Check check;
  std::mt19937_64 rng(30013);
  std::vector<FeatureSet> sets;
  sets.reserve(10000);
  for (int i = 0; i < 10000; ++i) sets.push_back(random_feature_set(rng));

  for (std::size_t i = 0; i < sets.size(); ++i) {
    const FeatureSet& left = sets[i];
    const FeatureSet& right = sets[(i + 1) % sets.size()];

    if (geodiff::jaccard(left.permissions, right.permissions) !=
        geodiff::testing::jaccard_oracle(left.permissions, right.permissions)) {
      check.require(false, "jaccard mismatch at iteration " + std::to_string(i));
      break;
    }
    if (geodiff::modified_jaccard(left.files, right.files).score !=
        geodiff::testing::modified_jaccard_oracle(left.files, right.files)) {
      check.require(false,
                    "modified_jaccard mismatch at iteration " + std::to_string(i));
      break;
    }
    if (geodiff::certificate_similarity(left.certificate, right.certificate)
            .score !=
        geodiff::testing::certificate_oracle(left.certificate,
                                             right.certificate)) {
      check.require(false,
                    "certificate mismatch at iteration " + std::to_string(i));
      break;
    }
    SimilarityReport report = geodiff::compare(left, right);
    double mean = 0.0;
    for (const geodiff::FeatureScore& fs : report.per_feature) mean += fs.score;
    mean /= 8.0;
    if (std::abs(report.overall - mean) > 1e-12 ||
        std::abs(report.overall -
                 geodiff::testing::overall_oracle(left, right)) > 1e-12) {
      check.require(false, "overall mismatch at iteration " + std::to_string(i));
      break;
    }
  }
  return check;
}

Check criterion_mining_oracles() {
  Check check;
  std::mt19937_64 rng(40040);
  std::uniform_int_distribution<int> size_dist(0, 2000);
  for (int round = 0; round < 200; ++round) {
    std::vector<CatalogEntry> catalog = random_catalog(rng, size_dist(rng));
    auto fast = geodiff::find_candidates(catalog, 10, 0.2);
    auto slow = geodiff::testing::brute_force_candidates(catalog, 10, 0.2);
    if (fast.size() != slow.size()) {
      check.require(false, "round " + std::to_string(round) + ": " +
                               std::to_string(fast.size()) + " pairs vs " +
                               std::to_string(slow.size()) + " brute-force");
      break;
    }
    for (std::size_t i = 0; i < fast.size(); ++i) {
      if (fast[i].a != slow[i].a || fast[i].b != slow[i].b ||
          fast[i].hamming != slow[i].hamming || fast[i].nld != slow[i].nld) {
        check.require(false, "round " + std::to_string(round) +
                                 ": pair divergence at index " +
                                 std::to_string(i));
        break;
      }
    }
    if (!check.ok) break;
  }
  return check;
}

Check criterion_nld_boundaries() {
  Check check;
  double unison = geodiff::normalized_levenshtein("jp.co.atm.unison",
                                                  "en.co.atm.unison");
  check.require(unison == 0.125, "unison pair NLD != 0.125");
  check.require(unison <= 0.2, "unison pair NLD above threshold");
  check.require(
      geodiff::testing::nld_oracle("jp.co.atm.unison", "en.co.atm.unison") ==
          unison,
      "unison pair disagrees with the DP oracle");

  double bookish = geodiff::normalized_levenshtein("sk.martinus.knihovratok",
                                                   "cz.martinus.knihovratek");
  check.require(bookish == 3.0 / 23.0, "Slovak/Czech pair NLD != 3/23");
  check.require(bookish <= 0.2, "Slovak/Czech pair NLD above threshold");
  check.require(geodiff::testing::nld_oracle("sk.martinus.knihovratok",
                                             "cz.martinus.knihovratek") ==
                    bookish,
                "Slovak/Czech pair disagrees with the DP oracle");
  return check;
}

Check criterion_dhash_stability() {
  Check check;
  check.require(geodiff::dhash(geodiff::testing::solid_image(64, 64, 90, 90, 90)) ==
                    0,
                "uniform image does not hash to zero");

  std::mt19937_64 rng(60606);
  int survivors = 0;
  for (int i = 0; i < 100; ++i) {
    geodiff::Raster original = geodiff::testing::random_gradient(rng, 48, 48);
    std::uint64_t hash = geodiff::dhash(original);
    check.require(geodiff::hamming(hash, geodiff::dhash(original)) == 0,
                  "self-distance nonzero at fixture " + std::to_string(i));

    geodiff::Raster upscaled = geodiff::resize_bilinear(original, 96, 96);
    if (geodiff::hamming(hash, geodiff::dhash(upscaled)) <= 10) ++survivors;
  }
  check.require(survivors >= 95,
                "only " + std::to_string(survivors) +
                    "/100 fixtures survive a 2x upscale within Hamming 10");
  return check;
}

Check criterion_fixture_differential() {
  Check check;
  using geodiff::testing::ApkSpec;
  using geodiff::testing::DexClassSpec;

  geodiff::testing::TestCertificate cert =
      geodiff::testing::make_test_certificate("Twin Publisher", 11);
  geodiff::Bytes icon = geodiff::testing::encode_p6(
      geodiff::testing::horizontal_ramp(16, 16));

  ApkSpec left_spec;
  left_spec.package = "com.sample.twin";
  left_spec.permissions = {"android.permission.INTERNET",
                           "android.permission.CAMERA"};
  left_spec.components = {{"activity", "com.sample.twin.MainActivity"}};
  left_spec.classes = {
      DexClassSpec{"La/A;", {{0x0e, 0x00}}, {}, {}},
      DexClassSpec{"Lb/B;", {{0x12, 0x01, 0x0e, 0x00}}, {}, {}},
      DexClassSpec{"Lcom/facebook/ads/Banner;", {{0x12, 0x02, 0x0e, 0x00}},
                   {}, {}}};
  left_spec.dex_strings = {"https://twin.example.com/api"};
  left_spec.text_files = {{"assets/data.txt", "payload revision one"}};
  left_spec.binary_files = {{"res/icon.png", icon}};
  left_spec.native_libs = {"lib/arm64-v8a/libfoo.so"};
  left_spec.v2_cert = &cert;

  // The differential: one extra permission, one replaced file, one extra
  // DEX class. Everything else byte-identical.
  ApkSpec right_spec = left_spec;
  right_spec.permissions.push_back("android.permission.READ_CONTACTS");
  right_spec.classes.push_back(DexClassSpec{"Lc/C;", {{0x0e, 0x00}}, {}, {}});
  right_spec.text_files = {{"assets/data.txt", "payload revision two"}};

  geodiff::ApkArchive left_apk = geodiff::open_apk_bytes(
      geodiff::testing::build_apk(left_spec), "left.apk");
  geodiff::ApkArchive right_apk = geodiff::open_apk_bytes(
      geodiff::testing::build_apk(right_spec), "right.apk");

  geodiff::LibraryPrefixCatalog catalog =
      geodiff::LibraryPrefixCatalog::from_lines({"com.facebook"});
  FeatureSet left = geodiff::extract_features(left_apk, catalog);
  FeatureSet right = geodiff::extract_features(right_apk, catalog);

  SimilarityReport report = geodiff::compare(left, right, "left", "right");
  const std::map<geodiff::Feature, std::string> goldens = {
      {geodiff::Feature::Permissions, "0.6667"},
      {geodiff::Feature::Components, "1.0000"},
      {geodiff::Feature::Certificates, "1.0000"},
      {geodiff::Feature::ThirdPartyLibs, "1.0000"},
      {geodiff::Feature::NativeLibs, "1.0000"},
      {geodiff::Feature::Urls, "1.0000"},
      {geodiff::Feature::Files, "0.7000"},
      {geodiff::Feature::SmaliFiles, "0.7500"}};
  for (const geodiff::FeatureScore& fs : report.per_feature) {
    std::string got = geodiff::format_score(fs.score);
    const std::string& want = goldens.at(fs.feature);
    check.require(got == want, std::string(geodiff::feature_name(fs.feature)) +
                                   " scored " + got + ", hand-computed " + want);
  }
  check.require(geodiff::format_score(report.overall) == "0.8896",
                "overall scored " + geodiff::format_score(report.overall) +
                    ", hand-computed 0.8896");

  SimilarityReport self = geodiff::compare(left, left, "left", "left");
  check.require(self.overall == 1.0, "compare(a,a) overall != 1.0");
  for (const geodiff::FeatureScore& fs : self.per_feature) {
    check.require(fs.score == 1.0, "compare(a,a) per-feature score != 1.0");
  }
  return check;
}

Check criterion_availability_histogram() {
  Check check;
  geodiff::testing::TempDir dir;
  const std::vector<std::string> regions = {"au", "cl", "il", "jp",
                                            "lu", "us", "za"};
  const std::string marker_page =
      "<html><body><button>Install</button></body></html>";
  const std::string blocked_page =
      "<html><body>This item is not available in your country.</body></html>";
  const std::vector<std::string> markers = {"<button>Install</button>"};

  // 20 packages: 12 available everywhere, 3 missing from za, 2 exclusive
  // to us, 1 exclusive to jp, 2 delisted somewhere (excluded from the
  // histogram). Hand-computed: retained 18, buckets 7->12, 6->3, 1->3,
  // exclusives us=2 jp=1.
  std::vector<std::string> packages;
  auto write_fixture = [&](const std::string& package, const std::string& region,
                           const std::string& body, int status) {
    std::ofstream(dir.file("store/" + region + "/" + package + ".html")) << body;
    if (status != 200) {
      std::ofstream(dir.file("store/" + region + "/" + package + ".status"))
          << status;
    }
  };

  for (int i = 0; i < 12; ++i) {
    std::string package = "com.global.app" + std::to_string(i);
    packages.push_back(package);
    for (const std::string& region : regions) {
      write_fixture(package, region, marker_page, 200);
    }
  }
  for (int i = 0; i < 3; ++i) {
    std::string package = "com.wide.app" + std::to_string(i);
    packages.push_back(package);
    for (const std::string& region : regions) {
      write_fixture(package, region, region == "za" ? blocked_page : marker_page,
                    200);
    }
  }
  for (int i = 0; i < 2; ++i) {
    std::string package = "us.local.app" + std::to_string(i);
    packages.push_back(package);
    for (const std::string& region : regions) {
      write_fixture(package, region, region == "us" ? marker_page : blocked_page,
                    200);
    }
  }
  {
    std::string package = "jp.local.app0";
    packages.push_back(package);
    for (const std::string& region : regions) {
      write_fixture(package, region, region == "jp" ? marker_page : blocked_page,
                    200);
    }
  }
  for (int i = 0; i < 2; ++i) {
    std::string package = "com.gone.app" + std::to_string(i);
    packages.push_back(package);
    for (const std::string& region : regions) {
      if (region == (i == 0 ? "jp" : "us")) {
        write_fixture(package, region, "not found", 404);
      } else {
        write_fixture(package, region, i == 0 ? marker_page : blocked_page, 200);
      }
    }
  }
  check.require(packages.size() == 20, "fixture corpus is not 20 packages");

  geodiff::FixtureFetcher fetcher(dir.path() + "/store");
  geodiff::ProbeOptions options;
  options.markers = markers;

  std::vector<geodiff::AvailabilityRecord> records;
  for (const std::string& package : packages) {
    records.push_back(geodiff::probe(package, regions, fetcher, options));
  }

  geodiff::ExclusivityStats stats = geodiff::exclusivity_stats(records, regions);
  check.require(stats.total_records == 20, "total != 20");
  check.require(stats.excluded_delisted == 2, "delisted exclusion != 2");
  check.require(stats.retained == 18, "retained != 18");
  std::map<std::size_t, std::uint64_t> expected_buckets = {
      {0, 0}, {1, 3}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 3}, {7, 12}};
  for (const auto& [count, apps] : expected_buckets) {
    check.require(stats.by_available_count.at(count) == apps,
                  "bucket " + std::to_string(count) + " holds " +
                      std::to_string(stats.by_available_count.at(count)) +
                      " apps, hand-computed " + std::to_string(apps));
  }
  for (const std::string& region : regions) {
    std::uint64_t expected = region == "us" ? 2 : region == "jp" ? 1 : 0;
    check.require(stats.exclusive_by_region.at(region) == expected,
                  "exclusive[" + region + "] != " + std::to_string(expected));
  }

  // The same corpus through the shipped tool: probe to JSONL, then the
  // availability CSV with hand-computed percentages over the 18 retained.
  std::string packages_path = dir.file("packages.txt");
  {
    std::ofstream out(packages_path);
    for (const std::string& package : packages) out << package << "\n";
  }
  std::string regions_path = dir.file("regions.toml");
  {
    std::ofstream out(regions_path);
    for (const std::string& region : regions) out << "[region." << region << "]\n";
  }
  std::string markers_path = dir.file("markers.txt");
  {
    std::ofstream out(markers_path);
    out << "# version: test\n" << markers[0] << "\n";
  }

  std::string records_path = dir.file("records.jsonl");
  geodiff::testing::CliResult probe_run = geodiff::testing::run_cli(
      "probe --packages " + packages_path + " --regions " + regions_path +
      " --fixtures " + dir.path() + "/store --markers " + markers_path +
      " --out " + records_path + " 2>/dev/null");
  check.require(probe_run.exit_code == 0, "probe exited nonzero");

  geodiff::testing::CliResult csv = geodiff::testing::run_cli(
      "stats availability " + records_path + " --regions au,cl,il,jp,lu,us,za" +
      " 2>/dev/null");
  check.require(csv.exit_code == 0, "stats availability exited nonzero");
  const std::string expected_csv =
      "section,key,apps,percentage\n"
      "availability,7,12,66.67\n"
      "availability,6,3,16.67\n"
      "availability,5,0,0.00\n"
      "availability,4,0,0.00\n"
      "availability,3,0,0.00\n"
      "availability,2,0,0.00\n"
      "availability,1,3,16.67\n"
      "availability,0,0,0.00\n"
      "exclusive,au,0,0.00\n"
      "exclusive,cl,0,0.00\n"
      "exclusive,il,0,0.00\n"
      "exclusive,jp,1,5.56\n"
      "exclusive,lu,0,0.00\n"
      "exclusive,us,2,11.11\n"
      "exclusive,za,0,0.00\n";
  check.require(csv.output == expected_csv,
                "availability CSV differs from the hand-computed table");
  return check;
}

Check criterion_corpus_scale_statement(std::vector<std::string>& notes) {
  Check check;
  notes.push_back(
      "corpus-scale figures are NOT reproducible at desk scale: the 0.84 and "
      "0.90 average similarity levels, the 8.6% base divergence rate, the "
      "78.46%/17.40% availability split, and the 81,963-pair dataset all "
      "require the original store downloads.");
  notes.push_back(
      "criteria 3-8 stand in for them: property suites prove the estimators "
      "and the fixture goldens prove the pipeline, so any user-supplied "
      "corpus reproduces such tables through the same code path.");

  // What CAN be enforced here: serialized reports carry every field needed
  // to rebuild those tables. Round-trip a batch and recompute each score
  // from detail counts alone, then rebuild a distribution from the
  // round-tripped reports.
  std::mt19937_64 rng(90909);
  std::vector<SimilarityReport> parsed;
  for (int i = 0; i < 200; ++i) {
    FeatureSet left = random_feature_set(rng);
    FeatureSet right = random_feature_set(rng);
    SimilarityReport report =
        geodiff::compare(left, right, "left" + std::to_string(i),
                         "right" + std::to_string(i));
    SimilarityReport round_trip =
        geodiff::report_from_json(geodiff::report_to_json(report));

    check.require(round_trip.left_id == report.left_id &&
                      round_trip.right_id == report.right_id,
                  "ids lost in serialization");
    check.require(round_trip.per_feature.size() == 8,
                  "serialized report lost feature rows");

    double mean = 0.0;
    for (const geodiff::FeatureScore& fs : round_trip.per_feature) {
      double recomputed = 0.0;
      switch (fs.feature) {
        case geodiff::Feature::Files:
        case geodiff::Feature::SmaliFiles:
          recomputed = fs.detail.at("union") == 0
                           ? 1.0
                           : (static_cast<double>(fs.detail.at("identical")) +
                              0.5 * static_cast<double>(fs.detail.at("similar"))) /
                                 static_cast<double>(fs.detail.at("union"));
          break;
        case geodiff::Feature::Certificates:
          if (!fs.detail.at("left_present") && !fs.detail.at("right_present")) {
            recomputed = 1.0;
          } else if (!fs.detail.at("left_present") ||
                     !fs.detail.at("right_present")) {
            recomputed = 0.0;
          } else {
            recomputed = fs.detail.at("union") == 0
                             ? 1.0
                             : static_cast<double>(fs.detail.at("matching")) /
                                   static_cast<double>(fs.detail.at("union"));
          }
          break;
        default:
          recomputed = fs.detail.at("union") == 0
                           ? 1.0
                           : static_cast<double>(fs.detail.at("intersection")) /
                                 static_cast<double>(fs.detail.at("union"));
      }
      // The 4-decimal serialized score must agree with the score the
      // detail counts imply; the counts themselves are exact.
      check.require(std::abs(fs.score - recomputed) <= 5e-5,
                    std::string(geodiff::feature_name(fs.feature)) +
                        " detail counts cannot reproduce the score");
      mean += recomputed;
    }
    mean /= 8.0;
    check.require(std::abs(round_trip.overall - mean) <= 1e-4,
                  "serialized overall strays from the recomputed mean");
    parsed.push_back(std::move(round_trip));
    if (!check.ok) break;
  }

  // Table-shaped aggregation works on round-tripped data alone.
  auto histograms =
      geodiff::score_histogram(parsed, {0.0, 0.2, 0.4, 0.6, 0.8, 0.99, 1.0});
  check.require(histograms.size() == 9, "histogram set incomplete");
  for (const geodiff::ScoreHistogram& h : histograms) {
    std::uint64_t total = 0;
    for (const geodiff::HistogramBucket& bucket : h.buckets) total += bucket.count;
    check.require(total == parsed.size(),
                  h.feature + " histogram loses reports");
  }
  return check;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_seconds;  // 0 = untimed
    std::function<Check()> run;
  };
  std::vector<std::string> notes;

  const std::vector<Criterion> criteria = {
      {1, "sample-size reproduction (48178 -> 382, 81963 -> 383)", 1.0,
       criterion_sample_size},
      {2, "GeoFamily identity pair counts for n in 2..12", 1.0,
       criterion_family_identity},
      {3, "scoring matches brute-force oracles on 10000 feature sets", 30.0,
       criterion_scoring_oracles},
      {4, "mining matches the quadratic scan on 200 catalogs", 120.0,
       criterion_mining_oracles},
      {5, "NLD boundary fidelity on the two published pairs", 0.0,
       criterion_nld_boundaries},
      {6, "dHash stability across a 2x bilinear upscale", 30.0,
       criterion_dhash_stability},
      {7, "end-to-end differential against hand-computed goldens", 10.0,
       criterion_fixture_differential},
      {8, "availability histogram over the 20-package fixture corpus", 5.0,
       criterion_availability_histogram},
      {9, "corpus-scale figures out of desk scope; report schema recomputes them",
       0.0, [&notes] { return criterion_corpus_scale_statement(notes); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception& error) {
      check.ok = false;
      check.why = std::string("exception: ") + error.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (check.ok && criterion.budget_seconds > 0 &&
        elapsed > criterion.budget_seconds) {
      check.ok = false;
      check.why = "over the " + std::to_string(criterion.budget_seconds) +
                  "s budget";
    }

    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
    if (check.ok) {
      std::printf("PASS  criterion %d: %s [%s]\n", criterion.number,
                  criterion.name, timing);
    } else {
      ++failures;
      std::printf("FAIL  criterion %d: %s [%s] -- %s\n", criterion.number,
                  criterion.name, timing, check.why.c_str());
    }
    for (const std::string& note : notes) {
      std::printf("      note: %s\n", note.c_str());
    }
    notes.clear();
    std::fflush(stdout);
  }
  return failures;
}
