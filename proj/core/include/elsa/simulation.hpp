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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elsa/clock.hpp"

namespace elsa {

// Schemes in force from an epoch on. Signature and timestamp descriptors
// are "ed25519" or an MSS family ("mss-sha256", "mss-sha512"); the tree
// height is chosen from the number of signatures the schedule needs.
struct RotationRow {
  std::uint64_t from_epoch = 0;
  std::string sig;
  std::string ts;
  std::string vc;        // data commitments
  std::string renew_vc;  // timestamp-renewal commitments
};

std::vector<RotationRow> default_rotation();

// A compressed timeline: one epoch stands for a year and is
// ticks_per_epoch clock ticks long. Within epoch e events happen at
//   +0 store, +6 timestamp renewal, +7 commitment renewal, +8 resharing,
//   +11 verification of one item from every earlier epoch.
// Renewals run in epochs with e % period == period - 1. A scheme replaced
// in epoch r breaks at the start of epoch r + 1.
struct Schedule {
  std::uint64_t horizon = 20;
  std::uint64_t items_per_epoch = 12;
  std::uint64_t item_size = 1024;
  std::uint64_t ticks_per_epoch = 12;
  std::uint64_t ts_renew_period = 2;
  std::uint64_t com_renew_period = 10;
  std::uint64_t reshare_period = 5;
  std::vector<RotationRow> rotation = default_rotation();
  std::size_t shareholders = 4;
  std::size_t threshold = 3;
  bool central_reshare = false;
  bool verify_annually = true;
  std::set<std::uint64_t> skip_ts_renewals;
  // Run schedules that let schemes break before renewal.
  bool allow_invalid = false;

  bool ts_renewal_at(std::uint64_t epoch) const;
  bool com_renewal_at(std::uint64_t epoch) const;
  bool reshare_at(std::uint64_t epoch) const;

  std::string to_json() const;
  // Missing fields keep their defaults. Throws Errc::kConfig.
  static Schedule from_json(std::string_view text);
};

// Throws Errc::kConfig for malformed schedules and for schedules in which
// a scheme breaks before the evidence it protects is renewed (unless
// allow_invalid).
void validate_schedule(const Schedule& schedule);

enum class SimMode { kElsa, kBaseline };
std::string_view sim_mode_name(SimMode mode);
SimMode parse_sim_mode(std::string_view name);

struct VerificationRecord {
  std::uint64_t epoch = 0;
  std::uint64_t item_epoch = 0;
  std::string name;
  bool ok = false;
};

struct MetricsReport {
  std::string mode;
  std::uint64_t seed = 0;
  Schedule schedule;

  std::uint64_t batches = 0;
  std::uint64_t items = 0;
  std::uint64_t ts_renewals = 0;
  std::uint64_t com_renewals = 0;
  std::uint64_t reshares = 0;
  std::uint64_t tokens = 0;
  std::uint64_t expected_tokens = 0;

  std::uint64_t evidence_bytes = 0;  // commitments and timestamps
  std::uint64_t evidence_index_bytes = 0;
  std::vector<std::uint64_t> shareholder_bytes;

  std::uint64_t verify_pass = 0;
  std::uint64_t verify_fail = 0;
  std::vector<VerificationRecord> verifications;

  double seconds_store = 0;
  double seconds_renew_ts = 0;
  double seconds_renew_com = 0;
  double seconds_reshare = 0;
  double seconds_verify = 0;
  double seconds_total = 0;

  std::string to_json() const;
  static MetricsReport from_json(std::string_view text);
  std::string to_table() const;
};

// Closed-form token count for a schedule.
std::uint64_t expected_tokens(const Schedule& schedule, SimMode mode);

// Runs the schedule on a fresh single-process deployment. With dir, the
// shareholders and the evidence service persist there.
MetricsReport simulate(const Schedule& schedule, SimMode mode, std::uint64_t seed,
                       const std::optional<std::filesystem::path>& dir = std::nullopt);

// Side-by-side table of several reports.
std::string comparison_table(const std::vector<MetricsReport>& reports);

}  // namespace elsa
