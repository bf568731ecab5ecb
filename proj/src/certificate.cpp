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

#include "geodiff/certificate.hpp"

#include <openssl/asn1.h>
#include <openssl/bn.h>
#include <openssl/evp.h>
#include <openssl/objects.h>
#include <openssl/pkcs7.h>
#include <openssl/x509.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <vector>

#include "geodiff/digest.hpp"
#include "geodiff/errors.hpp"
#include "geodiff/zip.hpp"

namespace geodiff {

namespace {

constexpr std::uint32_t kV2BlockId = 0x7109871a;
constexpr char kSigningBlockMagic[] = "APK Sig Block 42";  // 16 bytes

void flatten_name(std::map<std::string, std::string>& out,
                  const std::string& prefix, X509_NAME* name) {
  std::map<std::string, int> seen;
  for (int i = 0; i < X509_NAME_entry_count(name); ++i) {
    X509_NAME_ENTRY* entry = X509_NAME_get_entry(name, i);
    ASN1_OBJECT* obj = X509_NAME_ENTRY_get_object(entry);
    int nid = OBJ_obj2nid(obj);
    std::string key;
    if (nid == NID_undef) {
      char buffer[80];
      OBJ_obj2txt(buffer, sizeof buffer, obj, 1);
      key = buffer;
    } else {
      key = OBJ_nid2sn(nid);
    }

    ASN1_STRING* data = X509_NAME_ENTRY_get_data(entry);
    unsigned char* utf8 = nullptr;
    int len = ASN1_STRING_to_UTF8(&utf8, data);
    std::string value = len >= 0 ? std::string(reinterpret_cast<char*>(utf8),
                                               static_cast<std::size_t>(len))
                                 : "";
    OPENSSL_free(utf8);

    std::string full = prefix + "." + key;
    int occurrence = ++seen[full];
    if (occurrence > 1) full += "." + std::to_string(occurrence);
    out[full] = value;
  }
}

std::string format_asn1_time(const ASN1_TIME* time) {
  std::tm tm{};
  if (ASN1_TIME_to_tm(time, &tm) != 1) return "";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buffer;
}

std::string public_key_algorithm(X509* cert) {
  EVP_PKEY* key = X509_get0_pubkey(cert);
  if (key == nullptr) return "unknown";
  switch (EVP_PKEY_base_id(key)) {
    case EVP_PKEY_RSA: return "RSA";
    case EVP_PKEY_EC: return "EC";
    case EVP_PKEY_DSA: return "DSA";
    case EVP_PKEY_ED25519: return "Ed25519";
    default: return OBJ_nid2sn(EVP_PKEY_base_id(key));
  }
}

// Leaf certificates (first in each signer's chain) from the v2 signing
// block, when one precedes the central directory.
std::vector<Bytes> v2_leaf_certificates(ByteView file, std::uint64_t cd_offset) {
  std::vector<Bytes> leaves;
  if (cd_offset < 32 || cd_offset > file.size()) return leaves;

  ByteView magic = file.subspan(cd_offset - 16, 16);
  if (!std::equal(magic.begin(), magic.end(),
                  reinterpret_cast<const std::uint8_t*>(kSigningBlockMagic))) {
    return leaves;
  }
  ByteCursor footer(file);
  footer.seek(cd_offset - 24);
  std::uint64_t block_size = footer.u64();  // excludes this field's twin at the start
  if (block_size + 8 > cd_offset || block_size < 24) return leaves;
  std::uint64_t block_start = cd_offset - block_size - 8;
  ByteCursor head(file);
  head.seek(block_start);
  if (head.u64() != block_size) return leaves;

  std::uint64_t entries_end = cd_offset - 24;
  while (head.ok() && head.pos() + 12 <= entries_end) {
    std::uint64_t entry_len = head.u64();
    std::uint32_t id = head.u32();
    if (entry_len < 4 || head.pos() + (entry_len - 4) > entries_end) return leaves;
    ByteView payload = head.view(entry_len - 4);
    if (id != kV2BlockId) continue;

    ByteCursor scheme(payload);
    std::uint32_t signers_len = scheme.u32();
    ByteView signers = scheme.view(signers_len);
    ByteCursor signer_seq(signers);
    while (signer_seq.ok() && signer_seq.remaining() >= 4) {
      std::uint32_t signer_len = signer_seq.u32();
      ByteCursor signer(signer_seq.view(signer_len));
      std::uint32_t signed_data_len = signer.u32();
      ByteCursor signed_data(signer.view(signed_data_len));
      std::uint32_t digests_len = signed_data.u32();
      signed_data.skip(digests_len);
      std::uint32_t certs_len = signed_data.u32();
      ByteCursor certs(signed_data.view(certs_len));
      if (certs.ok() && certs.remaining() >= 4) {
        std::uint32_t cert_len = certs.u32();
        ByteView der = certs.view(cert_len);
        if (certs.ok()) leaves.emplace_back(der.begin(), der.end());
      }
    }
  }
  return leaves;
}

bool is_v1_signature_entry(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (!upper.starts_with("META-INF/")) return false;
  return upper.ends_with(".RSA") || upper.ends_with(".DSA") ||
         upper.ends_with(".EC");
}

std::vector<Bytes> v1_signer_certificates(const Bytes& pkcs7_der) {
  std::vector<Bytes> result;
  const unsigned char* p = pkcs7_der.data();
  PKCS7* p7 = d2i_PKCS7(nullptr, &p, static_cast<long>(pkcs7_der.size()));
  if (p7 == nullptr) return result;

  STACK_OF(X509)* signers = PKCS7_get0_signers(p7, nullptr, 0);
  STACK_OF(X509)* certs = signers;
  if ((signers == nullptr || sk_X509_num(signers) == 0) &&
      PKCS7_type_is_signed(p7) && p7->d.sign != nullptr) {
    certs = p7->d.sign->cert;  // no matching signer info: fall back to the chain
  }
  for (int i = 0; certs != nullptr && i < sk_X509_num(certs); ++i) {
    X509* cert = sk_X509_value(certs, i);
    unsigned char* der = nullptr;
    int len = i2d_X509(cert, &der);
    if (len > 0) result.emplace_back(der, der + len);
    OPENSSL_free(der);
  }
  sk_X509_free(signers);
  PKCS7_free(p7);
  return result;
}

}  // namespace

CertificateSummary summarize_certificate(ByteView der) {
  const unsigned char* p = der.data();
  X509* cert = d2i_X509(nullptr, &p, static_cast<long>(der.size()));
  if (cert == nullptr) throw UnparseableCertificate("invalid DER encoding");

  CertificateSummary summary;
  flatten_name(summary.flattened, "subject", X509_get_subject_name(cert));
  flatten_name(summary.flattened, "issuer", X509_get_issuer_name(cert));

  BIGNUM* serial = ASN1_INTEGER_to_BN(X509_get_serialNumber(cert), nullptr);
  char* serial_hex = serial != nullptr ? BN_bn2hex(serial) : nullptr;
  std::string serial_str = serial_hex != nullptr ? serial_hex : "";
  std::transform(serial_str.begin(), serial_str.end(), serial_str.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  OPENSSL_free(serial_hex);
  BN_free(serial);
  summary.flattened["serial_number"] = serial_str;

  summary.flattened["validity.not_before"] =
      format_asn1_time(X509_get0_notBefore(cert));
  summary.flattened["validity.not_after"] =
      format_asn1_time(X509_get0_notAfter(cert));
  summary.flattened["public_key.algorithm"] = public_key_algorithm(cert);
  summary.flattened["signature_algorithm"] =
      OBJ_nid2ln(X509_get_signature_nid(cert));
  summary.fingerprint_sha256 = sha256_hex(der);

  X509_free(cert);
  return summary;
}

std::optional<CertificateSummary> find_certificate(const ZipReader& zip) {
  std::vector<Bytes> candidates =
      v2_leaf_certificates(zip.whole_file(), zip.central_directory_offset());

  bool saw_v1_entry = false;
  for (const ZipEntryInfo& entry : zip.entries()) {
    if (!is_v1_signature_entry(entry.name)) continue;
    saw_v1_entry = true;
    std::vector<Bytes> certs = v1_signer_certificates(zip.read(entry));
    candidates.insert(candidates.end(), certs.begin(), certs.end());
  }

  if (candidates.empty()) {
    if (saw_v1_entry) throw UnparseableCertificate("signature entry present but no certificate parsed");
    return std::nullopt;
  }

  const Bytes* best = nullptr;
  std::string best_fingerprint;
  for (const Bytes& der : candidates) {
    std::string fingerprint = sha256_hex(der);
    if (best == nullptr || fingerprint < best_fingerprint) {
      best = &der;
      best_fingerprint = fingerprint;
    }
  }
  return summarize_certificate(*best);
}

}  // namespace geodiff
