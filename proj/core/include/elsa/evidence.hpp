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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elsa/timestamp.hpp"
#include "elsa/vector_commitment.hpp"

namespace elsa {

// A data commitment: initial storage or commitment renewal. The opening is
// only attached by the client on retrieval.
struct ComPart {
  std::string vc_id;
  Digest c;
  std::uint64_t position = 0;
  std::optional<Opening> d;
  friend bool operator==(const ComPart&, const ComPart&) = default;
};

// A timestamp renewal: commitment to the prior chain of one list.
struct RenewPart {
  std::string vc_id;
  Digest c;
  std::uint64_t position = 0;
  Opening d;
  friend bool operator==(const RenewPart&, const RenewPart&) = default;
};

struct EvidenceEntry {
  std::optional<ComPart> com;
  std::optional<RenewPart> renew;
  TimestampToken ts;

  bool is_com() const { return com.has_value(); }
  const std::string& vc_id() const { return com ? com->vc_id : renew->vc_id; }
  const Digest& c() const { return com ? com->c : renew->c; }

  // Position-free form kept in shared lists and committed by timestamp
  // renewals:
  //   Tuple[Str("com"), Str(vc), Bytes(c), token]
  //   Tuple[Str("renew"), Str(vc), Bytes(c), opening, UInt(pos), token]
  Value chain_value() const;
  static EvidenceEntry from_chain_value(const Value& v);

  // Full form used in evidence bundles:
  //   Tuple[UInt(0), Str(vc), Bytes(c), UInt(pos), opening | Bottom, token]
  //   Tuple[UInt(1), Str(vc), Bytes(c), UInt(pos), opening, token]
  Value to_value() const;
  static EvidenceEntry from_value(const Value& v);

  friend bool operator==(const EvidenceEntry&, const EvidenceEntry&) = default;
};

using EvidenceList = std::vector<EvidenceEntry>;

// Tuple of chain values; the message a timestamp renewal commits to.
Value chain_value(std::span<const EvidenceEntry> entries);

// The message a timestamp covers: Tuple[Str(vc_id), Bytes(c)].
Value stamped_commitment(const std::string& vc_id, const Digest& c);

}  // namespace elsa
