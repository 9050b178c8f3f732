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

#include "elsa/signature.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <memory>
#include <mutex>

#include "elsa/errors.hpp"
#include "elsa/hash.hpp"

namespace elsa {

// Implemented in mss.cpp.
std::unique_ptr<SigningKey> mss_setup(std::string_view descriptor, HashAlgorithm algo,
                                      unsigned height, RandomSource& rng);
std::unique_ptr<SigningKey> mss_import(std::string_view descriptor, HashAlgorithm algo,
                                       unsigned height, ByteView secret);
bool mss_verify(HashAlgorithm algo, unsigned height, ByteView public_key,
                const Value& m, ByteView signature);

namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

constexpr std::size_t kEd25519KeySize = 32;
constexpr std::size_t kEd25519SigSize = 64;

class Ed25519Key final : public SigningKey {
 public:
  explicit Ed25519Key(Bytes seed) : seed_(std::move(seed)) {
    require(seed_.size() == kEd25519KeySize, Errc::kParameter,
            "ed25519 secret key must be 32 bytes");
    pkey_.reset(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed_.data(),
                                             seed_.size()));
    require(pkey_ != nullptr, Errc::kParameter, "invalid ed25519 secret key");
    std::size_t len = kEd25519KeySize;
    public_.resize(len);
    EVP_PKEY_get_raw_public_key(pkey_.get(), public_.data(), &len);
  }

  const std::string& descriptor() const override { return name_; }
  Bytes public_key() const override { return public_; }
  Bytes export_secret() const override { return seed_; }
  std::uint64_t remaining() const override { return ~std::uint64_t{0}; }

  Bytes sign(const Value& m) override {
    const Bytes msg = encode(m);
    MdCtxPtr ctx(EVP_MD_CTX_new());
    Bytes sig(kEd25519SigSize);
    std::size_t len = sig.size();
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, pkey_.get()) != 1 ||
        EVP_DigestSign(ctx.get(), sig.data(), &len, msg.data(), msg.size()) != 1) {
      fail(Errc::kParameter, "ed25519 signing failed");
    }
    sig.resize(len);
    return sig;
  }

 private:
  std::string name_ = "ed25519";
  Bytes seed_;
  Bytes public_;
  PkeyPtr pkey_;
};

bool ed25519_verify(ByteView public_key, const Value& m, ByteView signature) {
  if (public_key.size() != kEd25519KeySize || signature.size() != kEd25519SigSize) {
    return false;
  }
  PkeyPtr pkey(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, public_key.data(),
                                           public_key.size()));
  if (!pkey) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  const Bytes msg = encode(m);
  return ctx &&
         EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) == 1 &&
         EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), msg.data(),
                          msg.size()) == 1;
}

struct ParsedDescriptor {
  bool ed25519 = false;
  HashAlgorithm algo = HashAlgorithm::kSha256;
  unsigned height = 0;
};

ParsedDescriptor parse(std::string_view d) {
  if (d == "ed25519") return {true};
  auto parse_mss = [&](std::string_view prefix, HashAlgorithm algo) -> ParsedDescriptor {
    std::string_view rest = d.substr(prefix.size());
    unsigned h = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), h);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || h < 1 || h > 20) {
      fail(Errc::kUnknownDescriptor, "signature '" + std::string(d) + "'");
    }
    return {false, algo, h};
  };
  if (d.starts_with("mss-sha256-h")) return parse_mss("mss-sha256-h", HashAlgorithm::kSha256);
  if (d.starts_with("mss-sha512-h")) return parse_mss("mss-sha512-h", HashAlgorithm::kSha512);
  fail(Errc::kUnknownDescriptor, "signature '" + std::string(d) + "'");
}

}  // namespace

void check_signature_descriptor(std::string_view descriptor) { parse(descriptor); }

std::unique_ptr<SigningKey> sig_setup(std::string_view descriptor, RandomSource& rng) {
  const ParsedDescriptor p = parse(descriptor);
  if (p.ed25519) return std::make_unique<Ed25519Key>(rng.bytes(kEd25519KeySize));
  return mss_setup(descriptor, p.algo, p.height, rng);
}

std::unique_ptr<SigningKey> sig_import(std::string_view descriptor, ByteView secret) {
  const ParsedDescriptor p = parse(descriptor);
  if (p.ed25519) return std::make_unique<Ed25519Key>(Bytes(secret.begin(), secret.end()));
  return mss_import(descriptor, p.algo, p.height, secret);
}

Signature sig_sign(SigningKey& key, std::string scheme_id, const Value& m) {
  return Signature{std::move(scheme_id), key.sign(m)};
}

bool sig_verify(std::string_view descriptor, ByteView public_key, const Value& m,
                ByteView signature) {
  try {
    const ParsedDescriptor p = parse(descriptor);
    if (p.ed25519) return ed25519_verify(public_key, m, signature);
    return mss_verify(p.algo, p.height, public_key, m, signature);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace elsa
