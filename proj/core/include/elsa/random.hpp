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
#include <span>

#include "elsa/bytes.hpp"

namespace elsa {

// Source of uniform random bytes. All randomized algorithms take one by
// reference so runs can be made reproducible.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  Bytes bytes(std::size_t n) {
    Bytes b(n);
    fill(b);
    return b;
  }
  std::uint64_t next_u64();
  // Uniform in [0, bound). bound must be non-zero.
  std::uint64_t uniform(std::uint64_t bound);
};

// Operating-system entropy via OpenSSL's DRBG.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// SHA-256 in counter mode over a 64-bit seed. Reproducible, not for
// production keys.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::uint64_t seed, std::uint64_t stream = 0);
  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  Bytes key_;
  std::uint64_t counter_ = 0;
  std::uint8_t block_[32] = {};
  std::size_t used_ = sizeof(block_);
};

SystemRandom& system_random();

}  // namespace elsa
