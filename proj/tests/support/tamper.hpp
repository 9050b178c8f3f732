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
#include <string>
#include <vector>

#include "elsa/archive.hpp"
#include "elsa/clock.hpp"
#include "elsa/pki.hpp"

namespace elsa::testing {

struct TamperReport {
  std::uint64_t mutations = 0;
  std::uint64_t rejected = 0;
  // Descriptions of mutations that still verified.
  std::vector<std::string> accepted;
};

// Every byte of dat and of every byte-string or integer field of the
// bundle (signature, scheme ids, commitments, opening paths, hiding
// commitments and witnesses, positions, token times and signatures) is
// mutated in turn: each of its 8 single-bit flips and its complement.
// A bundle that no longer parses counts as rejected.
TamperReport run_tamper_suite(const PkiRegistry& pki, Time t_verify, const Bytes& dat,
                              Time t_store, const EvidenceBundle& bundle);

// The bundle as Tuple[Str(sig_id), s, entries...] in full entry form.
Value bundle_value(const EvidenceBundle& bundle);
EvidenceBundle bundle_from_value(const Value& v);

}  // namespace elsa::testing
