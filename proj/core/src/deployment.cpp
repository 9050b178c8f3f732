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

#include "elsa/deployment.hpp"

#include "elsa/vector_commitment.hpp"

namespace elsa {

Deployment::Deployment(const DeploymentConfig& config)
    : ops_rng_(config.seed, 0), key_rng_(config.seed, 1), es_rng_(config.seed, 2), config_(config) {
  std::vector<std::shared_ptr<ShareholderApi>> apis;
  for (std::size_t i = 0; i < config.shareholders; ++i) {
    const auto x = static_cast<std::uint8_t>(i + 1);
    auto rng = std::make_unique<DeterministicRandom>(config.seed, 100 + i);
    auto sh = config.dir ? Shareholder::open(*config.dir / ("sh" + std::to_string(x)), x,
                                             std::move(rng))
                         : std::make_shared<Shareholder>(x, ShareStore(), std::move(rng));
    shareholders.push_back(sh);
    apis.push_back(sh);
  }
  sharing = std::make_shared<SharingSystem>(std::move(apis), config.threshold, ops_rng_);
  evidence = std::make_shared<EvidenceService>(
      pki, timestamps, es_rng_,
      config.dir ? std::optional(*config.dir / "es") : std::nullopt);
  archive = make_archive(evidence);
}

void Deployment::add_signature_scheme(const std::string& id, std::string_view descriptor,
                                      Time valid_from, Time t_b) {
  auto key = sig_setup(descriptor, key_rng_);
  pki.add(SchemeInstance{id, SchemeKind::kSignature, std::string(descriptor), key->public_key(),
                         valid_from, t_b});
  keys.add(id, std::move(key));
}

void Deployment::add_timestamp_scheme(const std::string& id, std::string_view descriptor,
                                      Time valid_from, Time t_b) {
  timestamps.add(ts_setup(descriptor, id, pki, clock, valid_from, t_b, key_rng_));
}

void Deployment::add_vc_scheme(const std::string& id, std::string_view descriptor,
                               std::uint64_t max_length, Time valid_from, Time t_b) {
  vc_register(pki, vc_setup(descriptor, max_length, key_rng_, id), valid_from, t_b);
}

std::unique_ptr<Archive> Deployment::make_archive(std::shared_ptr<EvidenceServiceApi> es) {
  return std::make_unique<Archive>(sharing, std::move(es), pki, keys, clock, ops_rng_,
                                   config_.options);
}

std::shared_ptr<EvidenceService> Deployment::make_evidence_service() {
  return std::make_shared<EvidenceService>(pki, timestamps, es_rng_);
}

}  // namespace elsa
