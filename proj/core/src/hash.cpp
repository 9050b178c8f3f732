// Copyright 2026 The ELSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "elsa/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

const std::array<HashDescriptor, 3> kDescriptors = {{
    {"sha256", HashAlgorithm::kSha256, 32, 32},
    {"sha512", HashAlgorithm::kSha512, 64, 64},
    {"toy8", HashAlgorithm::kSha256, 1, 32},
}};

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

struct MdDeleter {
  void operator()(EVP_MD* md) const { EVP_MD_free(md); }
};

// Explicitly fetched digests skip the per-call provider lookup that the
// EVP_sha256() handles incur on OpenSSL 3.
const EVP_MD* evp_md(HashAlgorithm algo) {
  static const std::unique_ptr<EVP_MD, MdDeleter> sha256(EVP_MD_fetch(nullptr, "SHA256", nullptr));
  static const std::unique_ptr<EVP_MD, MdDeleter> sha512(EVP_MD_fetch(nullptr, "SHA512", nullptr));
  const EVP_MD* md = algo == HashAlgorithm::kSha256 ? sha256.get() : sha512.get();
  require(md != nullptr, Errc::kParameter, "OpenSSL digest unavailable");
  return md;
}

// Hashing is on every hot path, so each thread keeps one context around.
EVP_MD_CTX* thread_ctx() {
  thread_local std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  return ctx.get();
}

Bytes digest_parts(HashAlgorithm algo, ByteView a, ByteView b) {
  EVP_MD_CTX* ctx = thread_ctx();
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (EVP_DigestInit_ex(ctx, evp_md(algo), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, a.data(), a.size()) != 1 ||
      EVP_DigestUpdate(ctx, b.data(), b.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
    fail(Errc::kParameter, "OpenSSL digest failure");
  }
  out.resize(len);
  return out;
}

}  // namespace

const HashDescriptor& hash_descriptor(std::string_view name) {
  for (const auto& d : kDescriptors) {
    if (d.name == name) return d;
  }
  fail(Errc::kUnknownDescriptor, "hash '" + std::string(name) + "'");
}

HashKey hash_keygen(const HashDescriptor& desc, RandomSource& rng) {
  return HashKey{rng.bytes(desc.key_size)};
}

Digest keyed_hash(const HashDescriptor& desc, const HashKey& key, const Value& v) {
  require(key.key.size() == desc.key_size, Errc::kParameter,
          "hash key length " + std::to_string(key.key.size()) + " != " +
              std::to_string(desc.key_size));
  Bytes d = digest_parts(desc.algorithm, key.key, encode(v));
  d.resize(desc.digest_size);
  return d;
}

Bytes sha256(ByteView data) { return digest_parts(HashAlgorithm::kSha256, data, {}); }
Bytes sha512(ByteView data) { return digest_parts(HashAlgorithm::kSha512, data, {}); }

Bytes raw_hash(HashAlgorithm algo, ByteView data) {
  return digest_parts(algo, data, {});
}

void raw_hash_into(HashAlgorithm algo, ByteView data, std::uint8_t* out) {
  EVP_MD_CTX* ctx = thread_ctx();
  unsigned int len = 0;
  if (EVP_DigestInit_ex(ctx, evp_md(algo), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out, &len) != 1) {
    fail(Errc::kParameter, "OpenSSL digest failure");
  }
}

std::size_t raw_digest_size(HashAlgorithm algo) {
  return algo == HashAlgorithm::kSha256 ? 32 : 64;
}

}  // namespace elsa
