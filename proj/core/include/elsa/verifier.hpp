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

#include "elsa/archive.hpp"
#include "elsa/pki.hpp"

namespace elsa {

struct VerifyResult {
  bool ok = false;
  // Index of the failing entry (or entries.size() for bundle-level checks)
  // and a short description; empty when ok.
  std::size_t entry = 0;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Replays an evidence chain:
//  - the first entry must be a data commitment whose token time equals
//    t_store; the signature is checked at that time;
//  - a data commitment must stay valid until the next data commitment (or
//    t_verify), a renewal commitment and every timestamp until the next
//    token (or t_verify);
//  - a renewal entry opens the chain accumulated since the last data
//    commitment; a later data commitment covers data, certificate,
//    signature and all previous entries.
// Never throws.
VerifyResult verify_evidence(const PkiRegistry& pki, Time t_verify, ByteView dat, Time t_store,
                             const EvidenceBundle& bundle);

inline bool verify(const PkiRegistry& pki, Time t_verify, ByteView dat, Time t_store,
                   const EvidenceBundle& bundle) {
  return verify_evidence(pki, t_verify, dat, t_store, bundle).ok;
}

}  // namespace elsa
