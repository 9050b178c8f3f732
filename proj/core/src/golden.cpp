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

#include "elsa/golden.hpp"

#include "elsa/bundle.hpp"

namespace elsa {

GoldenTrace build_golden_trace(std::uint64_t seed) {
  DeploymentConfig cfg;
  cfg.shareholders = 3;
  cfg.threshold = 2;
  cfg.seed = seed;
  auto d = std::make_unique<Deployment>(cfg);

  d->add_signature_scheme("sig-ed25519", "ed25519", 0, 100);
  d->add_timestamp_scheme("ts-ed25519", "ed25519", 0, 5);
  d->add_timestamp_scheme("ts-mss256", "mss-sha256-h4", 0, 100);
  d->add_vc_scheme("vc-hm256", "hiding-hm256", 4, 0, 6);
  d->add_vc_scheme("rvc-sha256", "merkle-sha256", 4, 0, 8);
  d->add_vc_scheme("vc-hm512", "hiding-hm512", 4, 0, 100);

  d->clock.advance_to(1);
  d->archive->store({{"alpha", to_bytes("first golden file")},
                     {"beta", to_bytes("second golden file")},
                     {"gamma", to_bytes("third golden file")}},
                    "sig-ed25519", "vc-hm256", "ts-ed25519");
  d->clock.advance_to(2);
  d->archive->renew_ts("rvc-sha256", "ts-ed25519");
  d->clock.advance_to(3);
  d->archive->renew_ts("rvc-sha256", "ts-mss256");
  d->clock.advance_to(4);
  d->archive->renew_com("vc-hm512", "ts-mss256");
  d->clock.advance_to(10);

  GoldenTrace trace;
  trace.name = "beta";
  trace.retrieved = d->archive->retrieve(trace.name);
  trace.dat = trace.retrieved.dat;
  trace.t_store = 1;
  trace.t_verify = 10;
  trace.deployment = std::move(d);
  return trace;
}

void write_golden_files(const GoldenTrace& trace, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  trace.deployment->pki.save(dir / "golden_pki.json");
  write_binary_file(dir / "golden.dat", trace.dat);
  write_bundle_file(dir / "golden.evidence", trace.dat, trace.retrieved.evidence);
}

}  // namespace elsa
