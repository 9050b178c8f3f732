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

#include "elsa/random.hpp"

#include <openssl/rand.h>

#include <cstring>

#include "elsa/errors.hpp"
#include "elsa/hash.hpp"

namespace elsa {

std::uint64_t RandomSource::next_u64() {
  std::uint8_t b[8];
  fill(b);
  return get_be64(b);
}

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
  require(bound != 0, Errc::kParameter, "uniform bound must be non-zero");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    fail(Errc::kParameter, "RAND_bytes failed");
  }
}

SystemRandom& system_random() {
  static SystemRandom rng;
  return rng;
}

DeterministicRandom::DeterministicRandom(std::uint64_t seed, std::uint64_t stream) {
  Bytes material = to_bytes("elsa-drbg");
  put_be64(material, seed);
  put_be64(material, stream);
  key_ = sha256(material);
}

void DeterministicRandom::refill() {
  Bytes input = key_;
  put_be64(input, counter_++);
  Bytes block = sha256(input);
  std::memcpy(block_, block.data(), sizeof(block_));
  used_ = 0;
}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (used_ == sizeof(block_)) refill();
    b = block_[used_++];
  }
}

}  // namespace elsa
