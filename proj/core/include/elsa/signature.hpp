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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "elsa/bytes.hpp"
#include "elsa/canonical.hpp"
#include "elsa/random.hpp"

namespace elsa {

struct Signature {
  std::string scheme_id;
  Bytes bytes;
};

// A secret signing key. Supported descriptors:
//   "ed25519"            conventional signatures via OpenSSL
//   "mss-sha256-h<H>"    hash-based few-time scheme: Winternitz (w = 16)
//   "mss-sha512-h<H>"    one-time keys under a Merkle tree of height H,
//                        giving 2^H signatures per key (1 <= H <= 20)
class SigningKey {
 public:
  virtual ~SigningKey() = default;

  virtual const std::string& descriptor() const = 0;
  virtual Bytes public_key() const = 0;
  // Serialized secret state, including the few-time scheme's counter.
  virtual Bytes export_secret() const = 0;
  // Signs encode(m). Throws Errc::kKeyExhausted once a few-time key is used up.
  virtual Bytes sign(const Value& m) = 0;
  // Number of further signatures this key can produce.
  virtual std::uint64_t remaining() const = 0;
};

std::unique_ptr<SigningKey> sig_setup(std::string_view descriptor, RandomSource& rng);
std::unique_ptr<SigningKey> sig_import(std::string_view descriptor, ByteView secret);

Signature sig_sign(SigningKey& key, std::string scheme_id, const Value& m);

// Never throws; malformed keys or signatures verify as false.
bool sig_verify(std::string_view descriptor, ByteView public_key, const Value& m,
                ByteView signature);

// Throws Errc::kUnknownDescriptor for anything sig_setup would reject.
void check_signature_descriptor(std::string_view descriptor);

}  // namespace elsa
