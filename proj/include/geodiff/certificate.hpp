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

#include <map>
#include <optional>
#include <string>

#include "geodiff/bytes.hpp"

namespace geodiff {

class ZipReader;

// Signing certificate reduced to a flat key/value map: subject and issuer
// attributes ("subject.CN", "issuer.O", duplicates suffixed ".2", ".3"...),
// serial number, validity bounds, and algorithm identifiers. Flat keys make
// the certificate comparable with the same machinery as any other map.
struct CertificateSummary {
  std::map<std::string, std::string> flattened;
  std::string fingerprint_sha256;

  bool operator==(const CertificateSummary&) const = default;
};

// Summarizes one DER-encoded X.509 certificate. Throws UnparseableCertificate.
CertificateSummary summarize_certificate(ByteView der);

// Signer selection over both signature sources: v2 signing block first,
// then v1 PKCS#7 entries under META-INF. Ties across multiple signers go
// to the lexicographically smallest fingerprint. Returns nullopt when the
// archive carries no signature at all.
std::optional<CertificateSummary> find_certificate(const ZipReader& zip);

}  // namespace geodiff
