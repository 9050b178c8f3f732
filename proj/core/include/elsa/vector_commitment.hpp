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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elsa/canonical.hpp"
#include "elsa/hash.hpp"
#include "elsa/hiding_commitment.hpp"
#include "elsa/pki.hpp"
#include "elsa/random.hpp"

namespace elsa {

// Vector commitments. "merkle-*" descriptors are the hash tree cast as a
// vector commitment; "hiding-*" descriptors first commit to every message
// with the statistically hiding scheme and then build the tree over the
// serialized per-message commitments.
//
//   merkle-sha256, merkle-sha512
//   hiding-hm256 (tree sha256), hiding-hm512 (tree sha512),
//   hiding-toy4 (tree sha256 over hm-toy4, tests only)
struct VcParams {
  std::string scheme_id;
  std::string descriptor;
  std::string hash_name;
  std::uint64_t max_length = 0;
  HashKey tree_key;
  std::optional<HidingParams> hiding;

  bool is_hiding() const { return hiding.has_value(); }
  const HashDescriptor& hash() const { return hash_descriptor(hash_name); }

  // Public parameters as stored in the PKI (the scheme id is not included).
  Value to_value() const;
  static VcParams from_value(std::string scheme_id, const Value& v);
};

struct VectorCommitment {
  std::string scheme_id;
  Digest c;
  friend bool operator==(const VectorCommitment&, const VectorCommitment&) = default;
};

struct HidingOpening {
  HidingCommitment commitment;
  HidingDecommitment decommitment;
  friend bool operator==(const HidingOpening&, const HidingOpening&) = default;
};

// Per-index opening: sibling digests ordered from the leaf level up to the
// level just below the root, plus the hiding pair for hiding schemes.
struct Opening {
  std::uint64_t index = 0;
  std::vector<Digest> path;
  std::optional<HidingOpening> hiding;

  // Tuple[UInt(i), Tuple[path...]] or Tuple[UInt(i), Tuple[path...], Tuple[c_i, d_i]].
  Value to_value() const;
  static Opening from_value(const Value& v);
  friend bool operator==(const Opening&, const Opening&) = default;
};

// Full decommitment: every node digest. levels[0] holds the root and
// levels[depth] the 2^depth leaves, padding leaves included.
struct TreeDecommitment {
  std::uint32_t depth = 0;
  std::uint64_t leaf_count = 0;
  std::vector<std::vector<Digest>> levels;
  std::vector<HidingOpening> hiding;
};

// Throws Errc::kUnknownDescriptor or Errc::kLength (max_length == 0).
VcParams vc_setup(std::string_view descriptor, std::uint64_t max_length, RandomSource& rng,
                  std::string scheme_id = {});

// Throws Errc::kLength unless 1 <= messages.size() <= max_length.
std::pair<VectorCommitment, TreeDecommitment> vc_commit(const VcParams& params,
                                                        std::span<const Value> messages,
                                                        RandomSource& rng);

// Throws Errc::kIndexOutOfRange.
Opening vc_open(const VcParams& params, const TreeDecommitment& decommitment,
                std::uint64_t index);

bool vc_verify(const VcParams& params, const Value& m, const VectorCommitment& c,
               const Opening& d, std::uint64_t index);

// Smallest l with n <= 2^l.
std::uint32_t tree_depth(std::uint64_t n);

// Registers params under params.scheme_id.
void vc_register(PkiRegistry& pki, const VcParams& params, Time valid_from, Time t_b);
// Throws Errc::kUnregisteredScheme, or Errc::kParameter for a registered
// scheme of another kind.
VcParams vc_params_from_pki(const PkiRegistry& pki, std::string_view scheme_id);

}  // namespace elsa
