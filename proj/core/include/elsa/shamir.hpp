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
#include <string>
#include <vector>

#include "elsa/bytes.hpp"
#include "elsa/random.hpp"

namespace elsa {

// Arithmetic in GF(2^8) modulo the AES polynomial x^8 + x^4 + x^3 + x + 1.
namespace gf256 {
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);  // a != 0
std::uint8_t div(std::uint8_t a, std::uint8_t b);
}  // namespace gf256

// One shareholder's point of a byte-wise Shamir sharing.
struct Share {
  std::uint8_t x = 0;
  Bytes y;
  std::string name;
  std::uint64_t epoch = 0;

  friend bool operator==(const Share&, const Share&) = default;
};

struct SharingPolicy {
  std::size_t n = 0;
  std::size_t t = 0;
};

// Requires 1 <= t <= n <= 255 (Errc::kThreshold otherwise). Shares are
// evaluations of per-byte degree-(t-1) polynomials at x = 1..n.
std::vector<Share> share(ByteView secret, std::size_t n, std::size_t t, RandomSource& rng,
                         const std::string& name = {}, std::uint64_t epoch = 0);

// Interpolates at zero from the first t shares. Errors: fewer than t shares
// (kThreshold), epochs or names differing (kEpochMismatch), repeated x
// (kDuplicateShare), differing lengths (kParameter).
Bytes reconstruct(std::span<const Share> shares, std::size_t t);

// Zero-constant-term sharing used for proactive renewal: evaluations at
// x = 1..n of per-byte polynomials with constant term 0.
std::vector<Bytes> zero_sharing(std::size_t length, std::size_t n, std::size_t t,
                                RandomSource& rng);

namespace detail {
// Raw Lagrange interpolation at zero with no consistency checks.
Bytes interpolate_at_zero(std::span<const Share> shares);
}  // namespace detail

}  // namespace elsa
