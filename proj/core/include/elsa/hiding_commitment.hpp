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

#include <string>
#include <string_view>
#include <utility>

#include "elsa/bytes.hpp"
#include "elsa/canonical.hpp"
#include "elsa/gf2n.hpp"
#include "elsa/hash.hpp"
#include "elsa/random.hpp"

namespace elsa {

// Statistically hiding commitment in the Halevi-Micali style. For a hash
// with ell-bit output and the field GF(2^(4 ell)):
//   mu = msb_ell(H(k, m)); pick x, a uniform and the low 3 ell bits of b
//   uniform; fix the top ell bits of b so that msb_ell(a*x + b) = mu.
//   commitment (msb_ell(H(k, x)), a, b), decommitment x.
//
// Descriptors: "hm-256" (SHA-256, GF(2^1024)), "hm-512" (SHA-512,
// GF(2^2048)) and "hm-toy4" (ell = 4 over GF(2^16) with the one-byte toy
// hash, for statistical tests only).
struct HidingParams {
  std::string descriptor;
  std::string hash_name;
  unsigned ell = 0;
  BinaryField field{16, {0}};
  HashKey key;

  const HashDescriptor& hash() const { return hash_descriptor(hash_name); }
  Value to_value() const;
  // Rejects parameters whose field or ell differ from the descriptor's
  // published constants.
  static HidingParams from_value(const Value& v);
};

struct HidingCommitment {
  Bytes y;
  Bytes a;
  Bytes b;

  Value to_value() const;
  static HidingCommitment from_value(const Value& v);
  friend bool operator==(const HidingCommitment&, const HidingCommitment&) = default;
};

struct HidingDecommitment {
  Bytes x;

  Value to_value() const { return Value::bytes(x); }
  static HidingDecommitment from_value(const Value& v) { return {v.as_bytes()}; }
  friend bool operator==(const HidingDecommitment&, const HidingDecommitment&) = default;
};

HidingParams hc_setup(std::string_view descriptor, RandomSource& rng);

std::pair<HidingCommitment, HidingDecommitment> hc_commit(const HidingParams& params,
                                                          const Value& m, RandomSource& rng);

bool hc_verify(const HidingParams& params, const Value& m, const HidingCommitment& c,
               const HidingDecommitment& d);

// The leading `bits` bits of data, packed big-endian into ceil(bits/8) bytes
// with trailing bits cleared.
Bytes leading_bits(ByteView data, unsigned bits);

}  // namespace elsa
