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

#include <cstddef>
#include <string>
#include <string_view>

#include "elsa/bytes.hpp"
#include "elsa/canonical.hpp"
#include "elsa/random.hpp"

namespace elsa {

enum class HashAlgorithm { kSha256, kSha512 };

// A keyed hash instance description. Keying is prefix concatenation:
// H(k, v) = Hash(k || encode(v)), truncated to digest_size bytes.
struct HashDescriptor {
  std::string name;
  HashAlgorithm algorithm;
  std::size_t digest_size;
  std::size_t key_size;
};

// "sha256" and "sha512" are the production descriptors. "toy8" truncates
// SHA-256 to one byte and exists for exhaustive/statistical tests only.
const HashDescriptor& hash_descriptor(std::string_view name);

struct HashKey {
  Bytes key;
};

using Digest = Bytes;

HashKey hash_keygen(const HashDescriptor& desc, RandomSource& rng);

// Throws Errc::kParameter if the key length does not match the descriptor.
Digest keyed_hash(const HashDescriptor& desc, const HashKey& key, const Value& v);

// Unkeyed one-shot digests.
Bytes sha256(ByteView data);
Bytes sha512(ByteView data);
Bytes raw_hash(HashAlgorithm algo, ByteView data);
// Writes the full digest (32 or 64 bytes) to out without allocating.
void raw_hash_into(HashAlgorithm algo, ByteView data, std::uint8_t* out);
std::size_t raw_digest_size(HashAlgorithm algo);

}  // namespace elsa
