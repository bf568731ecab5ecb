#include "geodiff/zip.hpp"

#include <doctest.h>

#include "../harness/temp_dir.hpp"
#include "../harness/zip_builder.hpp"
#include "geodiff/datafiles.hpp"
#include "geodiff/errors.hpp"

using namespace geodiff;
namespace gt = geodiff::testing;

TEST_CASE("stored and deflated entries read back verbatim") {
  std::string big(5000, 'x');
  Bytes archive = gt::ZipBuilder()
                      .add_text("a.txt", "hello")
                      .add_text("dir/b.bin", big, /*deflate=*/true)
                      .add_text("empty", "")
                      .build();
  ZipReader zip = ZipReader::from_bytes(archive);
  REQUIRE(zip.entries().size() == 3);
  CHECK(zip.entries()[0].name == "a.txt");
  CHECK(zip.entries()[0].method == 0);
  CHECK(to_string(zip.read(zip.entries()[0])) == "hello");
  CHECK(zip.entries()[1].method == 8);
  CHECK(zip.entries()[1].compressed_size < big.size());
  CHECK(to_string(zip.read(zip.entries()[1])) == big);
  CHECK(zip.read(zip.entries()[2]).empty());
  CHECK(zip.warnings().empty());
}

TEST_CASE("archive comments do not hide the directory record") {
  Bytes archive = gt::ZipBuilder()
                      .add_text("x", "payload")
                      .comment("trailing archive comment")
                      .build();
  ZipReader zip = ZipReader::from_bytes(archive);
  REQUIRE(zip.entries().size() == 1);
  CHECK(to_string(zip.read(zip.entries()[0])) == "payload");
}

TEST_CASE("duplicate names keep the last record in place") {
  Bytes archive = gt::ZipBuilder()
                      .add_text("first", "1")
                      .add_text("dup.txt", "old")
                      .add_text("last", "2")
                      .add_text("dup.txt", "new")
                      .build();
  ZipReader zip = ZipReader::from_bytes(archive);
  REQUIRE(zip.entries().size() == 3);
  CHECK(zip.entries()[0].name == "first");
  CHECK(zip.entries()[1].name == "dup.txt");
  CHECK(zip.entries()[2].name == "last");
  CHECK(to_string(zip.read(zip.entries()[1])) == "new");
  REQUIRE(zip.warnings().size() == 1);
  CHECK(zip.warnings()[0] ==
        "duplicate zip entry 'dup.txt', keeping the last central-directory record");
}

TEST_CASE("non-archives are rejected") {
  CHECK_THROWS_AS(ZipReader::from_bytes({}), NotAZipArchive);
  CHECK_THROWS_AS(ZipReader::from_bytes(Bytes(100, 0x55)), NotAZipArchive);
  Bytes truncated = gt::ZipBuilder().add_text("x", "y").build();
  truncated.resize(truncated.size() - 4);
  CHECK_THROWS_AS(ZipReader::from_bytes(std::move(truncated)), NotAZipArchive);
}

TEST_CASE("CRC mismatches surface as corrupt entries") {
  Bytes archive = gt::ZipBuilder().add_text("f.txt", "content!").build();
  // The stored payload sits right after the 30-byte local header + name.
  archive[30 + 5] ^= 0xff;
  ZipReader zip = ZipReader::from_bytes(std::move(archive));
  CHECK_THROWS_AS(zip.read(zip.entries()[0]), CorruptEntry);
}

TEST_CASE("unsupported compression methods are corrupt entries") {
  Bytes archive = gt::ZipBuilder().add_text("f", "abc").build();
  ZipReader zip = ZipReader::from_bytes(std::move(archive));
  ZipEntryInfo entry = zip.entries()[0];
  entry.method = 99;
  CHECK_THROWS_AS(zip.read(entry), CorruptEntry);
}

TEST_CASE("open_file reads from disk") {
  gt::TempDir dir;
  Bytes archive = gt::ZipBuilder().add_text("hello.txt", "from disk").build();
  std::string path = dir.file("sample.zip");
  write_text_file(path, std::string(archive.begin(), archive.end()));
  ZipReader zip = ZipReader::open_file(path);
  REQUIRE(zip.entries().size() == 1);
  CHECK(to_string(zip.read(zip.entries()[0])) == "from disk");
  CHECK_THROWS_AS(ZipReader::open_file(dir.file("missing.zip")), IoError);
}

TEST_CASE("central directory offset is exposed for signing-block scans") {
  Bytes block = {'o', 'p', 'a', 'q', 'u', 'e'};
  Bytes archive =
      gt::ZipBuilder().add_text("x", "1").pre_central_block(block).build();
  ZipReader zip = ZipReader::from_bytes(std::move(archive));
  ByteView tail = zip.whole_file().subspan(
      zip.central_directory_offset() - block.size(), block.size());
  CHECK(to_string(tail) == "opaque");
}
