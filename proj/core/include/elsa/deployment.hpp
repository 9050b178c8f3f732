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
#include <optional>
#include <string>
#include <vector>

#include "elsa/archive.hpp"
#include "elsa/clock.hpp"
#include "elsa/evidence_service.hpp"
#include "elsa/pki.hpp"
#include "elsa/random.hpp"
#include "elsa/shareholder.hpp"
#include "elsa/sharing_system.hpp"
#include "elsa/timestamp.hpp"

namespace elsa {

struct DeploymentConfig {
  std::size_t shareholders = 4;
  std::size_t threshold = 3;
  std::uint64_t seed = 1;
  // Persist shareholders (sh<i>/) and the evidence service (es/) here.
  std::optional<std::filesystem::path> dir;
  ArchiveOptions options;
};

// A complete single-process system: clock, PKI, timestamp services,
// shareholders, evidence service and the data owner's archive. All
// randomness derives from the seed.
class Deployment {
 public:
  explicit Deployment(const DeploymentConfig& config);
  Deployment(const Deployment&) = delete;
  Deployment& operator=(const Deployment&) = delete;

  void add_signature_scheme(const std::string& id, std::string_view descriptor, Time valid_from,
                            Time t_b);
  void add_timestamp_scheme(const std::string& id, std::string_view descriptor, Time valid_from,
                            Time t_b);
  void add_vc_scheme(const std::string& id, std::string_view descriptor, std::uint64_t max_length,
                     Time valid_from, Time t_b);

  // Another archive over the same shareholders with its own in-memory
  // evidence service.
  std::unique_ptr<Archive> make_archive(std::shared_ptr<EvidenceServiceApi> evidence);
  std::shared_ptr<EvidenceService> make_evidence_service();

  RandomSource& rng() { return ops_rng_; }

  LogicalClock clock;
  PkiRegistry pki;
  TimestampDirectory timestamps;
  KeyRing keys;

 private:
  DeterministicRandom ops_rng_;
  DeterministicRandom key_rng_;
  DeterministicRandom es_rng_;
  DeploymentConfig config_;

 public:
  std::vector<std::shared_ptr<Shareholder>> shareholders;
  std::shared_ptr<SharingSystem> sharing;
  std::shared_ptr<EvidenceService> evidence;
  std::unique_ptr<Archive> archive;
};

}  // namespace elsa
