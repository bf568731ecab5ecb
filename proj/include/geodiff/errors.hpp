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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geodiff {

// Base class for every error this library reports. Subcommands map these
// to exit code 2; anything else escaping main is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotAZipArchive : public Error {
 public:
  explicit NotAZipArchive(const std::string& path)
      : Error("not a zip archive: " + path) {}
};

class ManifestMissing : public Error {
 public:
  ManifestMissing() : Error("archive has no AndroidManifest.xml entry") {}
  explicit ManifestMissing(const std::string& source)
      : Error("archive has no AndroidManifest.xml entry: " + source) {}
};

class CorruptEntry : public Error {
 public:
  explicit CorruptEntry(const std::string& entry_path)
      : Error("cannot decompress archive entry: " + entry_path),
        path(entry_path) {}
  std::string path;
};

class UnknownManifestEncoding : public Error {
 public:
  UnknownManifestEncoding()
      : Error("manifest is neither binary AXML nor plaintext XML") {}
};

class MalformedAxml : public Error {
 public:
  explicit MalformedAxml(std::size_t at_offset)
      : Error("malformed binary XML at offset " + std::to_string(at_offset)),
        offset(at_offset) {}
  std::size_t offset;
};

class BadDexMagic : public Error {
 public:
  BadDexMagic() : Error("input does not start with a DEX magic") {}
};

class TruncatedDex : public Error {
 public:
  explicit TruncatedDex(const std::string& which_section)
      : Error("DEX data truncated in section: " + which_section),
        section(which_section) {}
  std::string section;
};

class NoCertificateFound : public Error {
 public:
  NoCertificateFound() : Error("archive carries no signing certificate") {}
};

class UnparseableCertificate : public Error {
 public:
  explicit UnparseableCertificate(const std::string& why)
      : Error("cannot parse signing certificate: " + why) {}
};

class UndecodableImage : public Error {
 public:
  explicit UndecodableImage(const std::string& why)
      : Error("cannot decode image: " + why) {}
};

class InsufficientFamilies : public Error {
 public:
  InsufficientFamilies(std::size_t requested, std::size_t have)
      : Error("requested " + std::to_string(requested) +
              " families but only " + std::to_string(have) + " exist") {}
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& why)
      : Error("invalid parameter: " + why) {}
};

class InvalidBuckets : public Error {
 public:
  explicit InvalidBuckets(const std::string& why)
      : Error("invalid histogram buckets: " + why) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& why) : Error(why) {}
};

}  // namespace geodiff
