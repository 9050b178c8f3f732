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

#include <filesystem>
#include <memory>
#include <string>

#include "elsa/deployment.hpp"

namespace elsa {

inline constexpr std::uint64_t kGoldenSeed = 20260101;

// Fixed scenario with a full scheme rotation:
//   t=1  store a batch of three files (ed25519 signature and timestamp,
//        hiding-hm256 commitment)
//   t=2  timestamp renewal (merkle-sha256, ed25519 timestamp)
//   t=3  timestamp renewal (merkle-sha256, mss-sha256 timestamp)
//   t=4  commitment renewal (hiding-hm512, mss-sha256 timestamp)
// The ed25519 timestamp breaks at t=5, hiding-hm256 at t=6 and the
// renewal commitment at t=8; the chain still verifies at t=10.
struct GoldenTrace {
  std::unique_ptr<Deployment> deployment;
  std::string name;
  Bytes dat;
  Time t_store = 0;
  Time t_verify = 0;
  RetrievedFile retrieved;
};

GoldenTrace build_golden_trace(std::uint64_t seed = kGoldenSeed);

// golden_pki.json, golden.dat and golden.evidence.
void write_golden_files(const GoldenTrace& trace, const std::filesystem::path& dir);

}  // namespace elsa
