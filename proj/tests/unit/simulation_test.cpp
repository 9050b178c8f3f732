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

#include <gtest/gtest.h>

#include "elsa/errors.hpp"
#include "elsa/simulation.hpp"
#include "test_support.hpp"

namespace elsa {
namespace {

Schedule small_schedule() {
  Schedule s;
  s.horizon = 6;
  s.items_per_epoch = 3;
  s.item_size = 64;
  s.ts_renew_period = 2;
  s.com_renew_period = 3;
  s.reshare_period = 2;
  s.rotation = {{0, "ed25519", "ed25519", "hiding-hm256", "merkle-sha256"},
                {2, "mss-sha256", "mss-sha256", "hiding-hm512", "merkle-sha512"}};
  return s;
}

TEST(Schedule, DefaultCountsMatchClosedForm) {
  const Schedule s;
  // 20 batches, renewals of timestamps in every odd epoch and of
  // commitments in epochs 9 and 19.
  EXPECT_EQ(expected_tokens(s, SimMode::kElsa), 20u + 10u + 2u);
  // Per item: 12 per batch, then one token per stored item per renewal.
  std::uint64_t baseline = 12 * 20;
  for (std::uint64_t e = 1; e < 20; e += 2) baseline += 12 * (e + 1);
  baseline += 12 * 10 + 12 * 20;
  EXPECT_EQ(baseline, 1920u);
  EXPECT_EQ(expected_tokens(s, SimMode::kBaseline), baseline);
  EXPECT_NO_THROW(validate_schedule(s));
}

TEST(Schedule, JsonRoundTrip) {
  Schedule s = small_schedule();
  s.skip_ts_renewals = {3};
  s.central_reshare = true;
  const Schedule back = Schedule::from_json(s.to_json());
  EXPECT_EQ(back.to_json(), s.to_json());
  EXPECT_EQ(Schedule::from_json("{\"horizon\": 7}").horizon, 7u);
  EXPECT_EQ(Schedule::from_json("{}").to_json(), Schedule{}.to_json());
  EXPECT_THROW(Schedule::from_json("{\"horizon\": \"x\"}"), Error);
  EXPECT_THROW(Schedule::from_json("not json"), Error);
}

TEST(Schedule, ValidationErrors) {
  auto rejects = [](auto&& mutate) {
    Schedule s;
    mutate(s);
    try {
      validate_schedule(s);
      return false;
    } catch (const Error& e) {
      return e.code() == Errc::kConfig;
    }
  };
  EXPECT_TRUE(rejects([](Schedule& s) { s.horizon = 0; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.items_per_epoch = 0; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.ticks_per_epoch = 1; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.ts_renew_period = 0; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.threshold = 5; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.rotation.clear(); }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.rotation[0].from_epoch = 1; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.rotation[2].from_epoch = 3; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.rotation[1].sig = "rsa"; }));
  EXPECT_TRUE(rejects([](Schedule& s) { s.rotation[1].vc = "pedersen"; }));
  // A timestamp scheme replaced at 3 breaks in epoch 4: epoch 3 needs a renewal.
  EXPECT_TRUE(rejects([](Schedule& s) { s.skip_ts_renewals = {3}; }));
  // Commitment schemes need a commitment renewal when they are replaced.
  EXPECT_TRUE(rejects([](Schedule& s) { s.com_renew_period = 7; }));
  EXPECT_FALSE(rejects([](Schedule& s) {
    s.skip_ts_renewals = {3};
    s.allow_invalid = true;
  }));
  EXPECT_THROW(simulate([] {
                 Schedule s;
                 s.horizon = 0;
                 return s;
               }(),
                        SimMode::kElsa, 1),
               Error);
  EXPECT_EQ(parse_sim_mode("per-item-baseline"), SimMode::kBaseline);
  EXPECT_THROW(parse_sim_mode("lincos"), Error);
}

TEST(Simulation, SmallRunsAreHonestAndMatchClosedForm) {
  const Schedule s = small_schedule();
  for (SimMode mode : {SimMode::kElsa, SimMode::kBaseline}) {
    const MetricsReport r = simulate(s, mode, 3);
    EXPECT_EQ(r.tokens, r.expected_tokens) << sim_mode_name(mode);
    EXPECT_EQ(r.tokens, expected_tokens(s, mode));
    EXPECT_EQ(r.batches, 6u);
    EXPECT_EQ(r.items, 18u);
    EXPECT_EQ(r.ts_renewals, 3u);
    EXPECT_EQ(r.com_renewals, 2u);
    EXPECT_EQ(r.reshares, 3u);
    EXPECT_EQ(r.verify_fail, 0u);
    EXPECT_EQ(r.verify_pass, 15u);
    EXPECT_EQ(r.shareholder_bytes.size(), 4u);
  }
  EXPECT_EQ(expected_tokens(s, SimMode::kElsa), 6u + 3u + 2u);
}

TEST(Simulation, Deterministic) {
  const Schedule s = small_schedule();
  const MetricsReport a = simulate(s, SimMode::kElsa, 9);
  const MetricsReport b = simulate(s, SimMode::kElsa, 9);
  EXPECT_EQ(a.tokens, b.tokens);
  EXPECT_EQ(a.evidence_bytes, b.evidence_bytes);
  EXPECT_EQ(a.evidence_index_bytes, b.evidence_index_bytes);
  EXPECT_EQ(a.shareholder_bytes, b.shareholder_bytes);
  ASSERT_EQ(a.verifications.size(), b.verifications.size());
  for (std::size_t i = 0; i < a.verifications.size(); ++i) {
    EXPECT_EQ(a.verifications[i].name, b.verifications[i].name);
    EXPECT_EQ(a.verifications[i].ok, b.verifications[i].ok);
  }
}

TEST(Simulation, ReportJsonRoundTrip) {
  const MetricsReport r = simulate(small_schedule(), SimMode::kBaseline, 2);
  const MetricsReport back = MetricsReport::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_EQ(back.tokens, r.tokens);
  EXPECT_EQ(back.shareholder_bytes, r.shareholder_bytes);
  EXPECT_EQ(back.verifications.size(), r.verifications.size());
  EXPECT_FALSE(r.to_table().empty());
  EXPECT_NE(comparison_table({r, back}).find("baseline"), std::string::npos);
}

TEST(Simulation, SkippedRenewalBreaksOlderItems) {
  Schedule s = small_schedule();
  s.horizon = 6;
  s.com_renew_period = 100;
  // Only the timestamp scheme rotates: gen-0 is replaced at 3 and breaks in
  // epoch 4.
  s.rotation = {{0, "ed25519", "ed25519", "hiding-hm256", "merkle-sha256"},
                {3, "ed25519", "mss-sha256", "hiding-hm256", "merkle-sha256"}};
  const MetricsReport honest = simulate(s, SimMode::kElsa, 4);
  EXPECT_EQ(honest.verify_fail, 0u);

  Schedule skipped = s;
  skipped.skip_ts_renewals = {3};
  EXPECT_THROW(validate_schedule(skipped), Error);
  skipped.allow_invalid = true;
  const MetricsReport broken = simulate(skipped, SimMode::kElsa, 4);
  EXPECT_EQ(broken.tokens, honest.tokens - 1);
  for (const auto& v : broken.verifications) {
    if (v.epoch >= 4 && v.item_epoch < 3) {
      EXPECT_FALSE(v.ok) << v.name << " at " << v.epoch;
    } else {
      EXPECT_TRUE(v.ok) << v.name << " at " << v.epoch;
    }
  }
}

TEST(Simulation, ElsaEvidenceIsSmallerAndShareholdersLarger) {
  const Schedule s = small_schedule();
  const MetricsReport elsa = simulate(s, SimMode::kElsa, 5);
  const MetricsReport base = simulate(s, SimMode::kBaseline, 5);
  EXPECT_LT(elsa.evidence_bytes, base.evidence_bytes);
  EXPECT_LT(elsa.tokens, base.tokens);
  for (std::size_t i = 0; i < elsa.shareholder_bytes.size(); ++i) {
    EXPECT_GT(elsa.shareholder_bytes[i], base.shareholder_bytes[i]);
  }
}

TEST(Simulation, PersistsToDirectory) {
  testing::TempDir dir;
  Schedule s = small_schedule();
  s.horizon = 3;
  const MetricsReport r = simulate(s, SimMode::kElsa, 6, dir.path());
  EXPECT_EQ(r.verify_fail, 0u);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "es"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "sh1"));
}

}  // namespace
}  // namespace elsa
