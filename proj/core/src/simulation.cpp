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

#include "elsa/simulation.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>

#include "elsa/deployment.hpp"
#include "elsa/errors.hpp"
#include "elsa/verifier.hpp"
#include "json.hpp"

namespace elsa {

using nlohmann::json;

namespace {

constexpr Time kStoreOffset = 0;
constexpr Time kTsRenewOffset = 6;
constexpr Time kComRenewOffset = 7;
constexpr Time kReshareOffset = 8;
constexpr Time kVerifyOffset = 11;
constexpr std::uint64_t kMinTicks = 12;

enum class Role { kSig, kTs, kVc, kRenewVc };
constexpr Role kRoles[] = {Role::kSig, Role::kTs, Role::kVc, Role::kRenewVc};

std::string_view role_prefix(Role r) {
  switch (r) {
    case Role::kSig: return "sig";
    case Role::kTs: return "ts";
    case Role::kVc: return "vc";
    case Role::kRenewVc: return "rvc";
  }
  return "";
}

const std::string& row_descriptor(const RotationRow& row, Role r) {
  switch (r) {
    case Role::kSig: return row.sig;
    case Role::kTs: return row.ts;
    case Role::kVc: return row.vc;
    case Role::kRenewVc: return row.renew_vc;
  }
  return row.sig;
}

// A maximal run of rows using the same descriptor for one role.
struct Instance {
  Role role;
  std::string id;
  std::string descriptor;
  std::uint64_t from_epoch = 0;
  std::optional<std::uint64_t> replaced_at;
};

std::vector<Instance> plan_instances(const Schedule& s) {
  std::vector<Instance> out;
  for (Role role : kRoles) {
    for (std::size_t r = 0; r < s.rotation.size(); ++r) {
      const RotationRow& row = s.rotation[r];
      if (row.from_epoch >= s.horizon) break;
      const std::string& desc = row_descriptor(row, role);
      if (r > 0 && desc == row_descriptor(s.rotation[r - 1], role)) continue;
      if (!out.empty() && out.back().role == role) out.back().replaced_at = row.from_epoch;
      out.push_back(
          Instance{role, std::string(role_prefix(role)) + "-" + std::to_string(r), desc,
                   row.from_epoch, std::nullopt});
    }
  }
  return out;
}

const Instance& active(const std::vector<Instance>& plan, Role role, std::uint64_t epoch) {
  const Instance* best = nullptr;
  for (const auto& inst : plan) {
    if (inst.role == role && inst.from_epoch <= epoch) best = &inst;
  }
  require(best != nullptr, Errc::kConfig, "no scheme in force at epoch " + std::to_string(epoch));
  return *best;
}

Time breakage(const Schedule& s, const Instance& inst) {
  return inst.replaced_at ? (*inst.replaced_at + 1) * s.ticks_per_epoch
                          : (s.horizon + 1) * s.ticks_per_epoch;
}

// Signatures an instance must produce over the whole run.
std::uint64_t signatures_needed(const Schedule& s, SimMode mode, const Instance& inst) {
  const std::uint64_t n = s.items_per_epoch;
  std::uint64_t count = 0;
  for (std::uint64_t e = inst.from_epoch; e < s.horizon; ++e) {
    if (inst.replaced_at && e >= *inst.replaced_at) break;
    const std::uint64_t stored = n * (e + 1);
    if (inst.role == Role::kSig) {
      count += n;
    } else if (inst.role == Role::kTs) {
      const std::uint64_t per_renewal = mode == SimMode::kElsa ? 1 : stored;
      count += mode == SimMode::kElsa ? 1 : n;
      if (s.ts_renewal_at(e)) count += per_renewal;
      if (s.com_renewal_at(e)) count += per_renewal;
    }
  }
  return count;
}

std::string concrete_descriptor(const Schedule& s, SimMode mode, const Instance& inst) {
  if (!inst.descriptor.starts_with("mss-")) return inst.descriptor;
  const std::uint64_t need = std::max<std::uint64_t>(signatures_needed(s, mode, inst), 2);
  unsigned h = 1;
  while ((std::uint64_t{1} << h) < need) ++h;
  require(h <= 20, Errc::kConfig, inst.id + " would need more than 2^20 signatures");
  return inst.descriptor + "-h" + std::to_string(h);
}

std::string item_name(std::uint64_t epoch, std::uint64_t index) {
  return "e" + std::to_string(epoch) + "-i" + std::to_string(index);
}

Bytes item_content(std::uint64_t seed, const Schedule& s, std::uint64_t epoch,
                   std::uint64_t index) {
  DeterministicRandom rng(seed, 1'000'000 + epoch * s.items_per_epoch + index);
  return rng.bytes(s.item_size);
}

class Stopwatch {
 public:
  explicit Stopwatch(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

json row_json(const RotationRow& r) {
  return {{"from_epoch", r.from_epoch}, {"sig", r.sig}, {"ts", r.ts}, {"vc", r.vc},
          {"renew_vc", r.renew_vc}};
}

json schedule_json(const Schedule& s) {
  json rows = json::array();
  for (const auto& r : s.rotation) rows.push_back(row_json(r));
  return {{"horizon", s.horizon},
          {"items_per_epoch", s.items_per_epoch},
          {"item_size", s.item_size},
          {"ticks_per_epoch", s.ticks_per_epoch},
          {"ts_renew_period", s.ts_renew_period},
          {"com_renew_period", s.com_renew_period},
          {"reshare_period", s.reshare_period},
          {"rotation", rows},
          {"shareholders", s.shareholders},
          {"threshold", s.threshold},
          {"central_reshare", s.central_reshare},
          {"verify_annually", s.verify_annually},
          {"skip_ts_renewals", s.skip_ts_renewals},
          {"allow_invalid", s.allow_invalid}};
}

Schedule schedule_from(const json& j) {
  Schedule s;
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("horizon", s.horizon);
  take("items_per_epoch", s.items_per_epoch);
  take("item_size", s.item_size);
  take("ticks_per_epoch", s.ticks_per_epoch);
  take("ts_renew_period", s.ts_renew_period);
  take("com_renew_period", s.com_renew_period);
  take("reshare_period", s.reshare_period);
  take("shareholders", s.shareholders);
  take("threshold", s.threshold);
  take("central_reshare", s.central_reshare);
  take("verify_annually", s.verify_annually);
  take("skip_ts_renewals", s.skip_ts_renewals);
  take("allow_invalid", s.allow_invalid);
  if (j.contains("rotation")) {
    s.rotation.clear();
    for (const auto& r : j.at("rotation")) {
      s.rotation.push_back(RotationRow{r.at("from_epoch").get<std::uint64_t>(),
                                       r.at("sig").get<std::string>(),
                                       r.at("ts").get<std::string>(),
                                       r.at("vc").get<std::string>(),
                                       r.at("renew_vc").get<std::string>()});
    }
  }
  return s;
}

}  // namespace

std::vector<RotationRow> default_rotation() {
  return {
      {0, "ed25519", "ed25519", "hiding-hm256", "merkle-sha256"},
      {3, "mss-sha256", "mss-sha256", "hiding-hm256", "merkle-sha256"},
      {9, "mss-sha512", "mss-sha512", "hiding-hm512", "merkle-sha512"},
  };
}

bool Schedule::ts_renewal_at(std::uint64_t epoch) const {
  return epoch % ts_renew_period == ts_renew_period - 1 && !skip_ts_renewals.contains(epoch);
}

bool Schedule::com_renewal_at(std::uint64_t epoch) const {
  return epoch % com_renew_period == com_renew_period - 1;
}

bool Schedule::reshare_at(std::uint64_t epoch) const {
  return epoch % reshare_period == reshare_period - 1;
}

std::string Schedule::to_json() const { return schedule_json(*this).dump(2) + "\n"; }

Schedule Schedule::from_json(std::string_view text) {
  try {
    return schedule_from(json::parse(text));
  } catch (const json::exception& e) {
    fail(Errc::kConfig, std::string("schedule: ") + e.what());
  }
}

void validate_schedule(const Schedule& s) {
  require(s.horizon >= 1 && s.items_per_epoch >= 1, Errc::kConfig,
          "horizon and items per epoch must be positive");
  require(s.ticks_per_epoch >= kMinTicks, Errc::kConfig,
          "an epoch needs at least " + std::to_string(kMinTicks) + " ticks");
  require(s.ts_renew_period >= 1 && s.com_renew_period >= 1 && s.reshare_period >= 1,
          Errc::kConfig, "renewal periods must be positive");
  require(s.threshold >= 1 && s.threshold <= s.shareholders && s.shareholders <= 255,
          Errc::kConfig, "need 1 <= threshold <= shareholders <= 255");
  require(!s.rotation.empty() && s.rotation[0].from_epoch == 0, Errc::kConfig,
          "the rotation table must start at epoch 0");
  for (std::size_t r = 1; r < s.rotation.size(); ++r) {
    require(s.rotation[r].from_epoch > s.rotation[r - 1].from_epoch, Errc::kConfig,
            "rotation epochs must increase");
  }
  for (const auto& row : s.rotation) {
    for (Role role : kRoles) {
      const std::string& d = row_descriptor(row, role);
      if (role == Role::kSig || role == Role::kTs) {
        require(d == "ed25519" || d == "mss-sha256" || d == "mss-sha512", Errc::kConfig,
                "unsupported signature family '" + d + "'");
      } else {
        require(d.starts_with("merkle-") || d.starts_with("hiding-"), Errc::kConfig,
                "unsupported commitment '" + d + "'");
      }
    }
  }
  if (s.allow_invalid) return;
  for (const auto& inst : plan_instances(s)) {
    if (!inst.replaced_at) continue;
    const std::uint64_t r = *inst.replaced_at;
    switch (inst.role) {
      case Role::kSig:
        break;
      case Role::kTs:
      case Role::kRenewVc:
        require(s.ts_renewal_at(r) || s.com_renewal_at(r), Errc::kConfig,
                inst.id + " (" + inst.descriptor + ") breaks in epoch " + std::to_string(r + 1) +
                    " but epoch " + std::to_string(r) + " has no renewal");
        break;
      case Role::kVc:
        require(s.com_renewal_at(r), Errc::kConfig,
                inst.id + " (" + inst.descriptor + ") breaks in epoch " + std::to_string(r + 1) +
                    " but epoch " + std::to_string(r) + " has no commitment renewal");
        break;
    }
  }
}

std::string_view sim_mode_name(SimMode mode) {
  return mode == SimMode::kElsa ? "elsa" : "baseline";
}

SimMode parse_sim_mode(std::string_view name) {
  if (name == "elsa") return SimMode::kElsa;
  if (name == "baseline" || name == "per-item-baseline") return SimMode::kBaseline;
  fail(Errc::kConfig, "unknown mode '" + std::string(name) + "'");
}

std::uint64_t expected_tokens(const Schedule& s, SimMode mode) {
  const std::uint64_t n = s.items_per_epoch;
  std::uint64_t total = 0;
  for (std::uint64_t e = 0; e < s.horizon; ++e) {
    const std::uint64_t per_renewal = mode == SimMode::kElsa ? 1 : n * (e + 1);
    total += mode == SimMode::kElsa ? 1 : n;
    if (s.ts_renewal_at(e)) total += per_renewal;
    if (s.com_renewal_at(e)) total += per_renewal;
  }
  return total;
}

MetricsReport simulate(const Schedule& s, SimMode mode, std::uint64_t seed,
                       const std::optional<std::filesystem::path>& dir) {
  validate_schedule(s);
  const auto started = std::chrono::steady_clock::now();

  MetricsReport report;
  report.mode = std::string(sim_mode_name(mode));
  report.seed = seed;
  report.schedule = s;
  report.expected_tokens = expected_tokens(s, mode);

  DeploymentConfig cfg;
  cfg.shareholders = s.shareholders;
  cfg.threshold = s.threshold;
  cfg.seed = seed;
  cfg.dir = dir;
  Deployment d(cfg);

  const std::vector<Instance> plan = plan_instances(s);
  const std::uint64_t vector_bound = s.horizon * s.items_per_epoch;
  for (const auto& inst : plan) {
    const Time from = inst.from_epoch * s.ticks_per_epoch;
    const Time t_b = breakage(s, inst);
    const std::string desc = concrete_descriptor(s, mode, inst);
    switch (inst.role) {
      case Role::kSig: d.add_signature_scheme(inst.id, desc, from, t_b); break;
      case Role::kTs: d.add_timestamp_scheme(inst.id, desc, from, t_b); break;
      case Role::kVc:
      case Role::kRenewVc: d.add_vc_scheme(inst.id, desc, vector_bound, from, t_b); break;
    }
  }

  // Baseline: one archive, and so one evidence service, per item.
  std::map<std::string, std::unique_ptr<Archive>> per_item;
  std::vector<std::shared_ptr<EvidenceService>> per_item_es;
  auto archive_of = [&](const std::string& name) -> Archive& {
    return mode == SimMode::kElsa ? *d.archive : *per_item.at(name);
  };

  for (std::uint64_t e = 0; e < s.horizon; ++e) {
    const Time base = e * s.ticks_per_epoch;
    const std::string sig = active(plan, Role::kSig, e).id;
    const std::string ts = active(plan, Role::kTs, e).id;
    const std::string vc = active(plan, Role::kVc, e).id;
    const std::string rvc = active(plan, Role::kRenewVc, e).id;

    d.clock.advance_to(base + kStoreOffset);
    {
      Stopwatch sw(report.seconds_store);
      std::vector<FileRecord> files;
      for (std::uint64_t i = 0; i < s.items_per_epoch; ++i) {
        files.push_back({item_name(e, i), item_content(seed, s, e, i)});
      }
      if (mode == SimMode::kElsa) {
        d.archive->store(files, sig, vc, ts);
      } else {
        for (auto& f : files) {
          auto es = d.make_evidence_service();
          per_item_es.push_back(es);
          auto archive = d.make_archive(es);
          archive->store({f}, sig, vc, ts);
          per_item[f.name] = std::move(archive);
        }
      }
      ++report.batches;
      report.items += s.items_per_epoch;
    }

    if (s.ts_renewal_at(e)) {
      d.clock.advance_to(base + kTsRenewOffset);
      Stopwatch sw(report.seconds_renew_ts);
      if (mode == SimMode::kElsa) {
        d.archive->renew_ts(rvc, ts);
      } else {
        for (auto& [_, a] : per_item) a->renew_ts(rvc, ts);
      }
      ++report.ts_renewals;
    }

    if (s.com_renewal_at(e)) {
      d.clock.advance_to(base + kComRenewOffset);
      Stopwatch sw(report.seconds_renew_com);
      if (mode == SimMode::kElsa) {
        d.archive->renew_com(vc, ts);
      } else {
        for (auto& [_, a] : per_item) a->renew_com(vc, ts);
      }
      ++report.com_renewals;
    }

    if (s.reshare_at(e)) {
      d.clock.advance_to(base + kReshareOffset);
      Stopwatch sw(report.seconds_reshare);
      if (s.central_reshare) {
        d.sharing->reshare_central();
      } else {
        d.sharing->reshare();
      }
      ++report.reshares;
    }

    if (s.verify_annually) {
      const Time now = d.clock.advance_to(base + kVerifyOffset);
      Stopwatch sw(report.seconds_verify);
      for (std::uint64_t prior = 0; prior < e; ++prior) {
        const std::uint64_t idx = (e * 7 + prior) % s.items_per_epoch;
        const std::string name = item_name(prior, idx);
        bool ok = false;
        try {
          const RetrievedFile rf = archive_of(name).retrieve(name);
          ok = rf.dat == item_content(seed, s, prior, idx) &&
               verify(d.pki, now, rf.dat, prior * s.ticks_per_epoch, rf.evidence);
        } catch (const Error&) {
          ok = false;
        }
        report.verifications.push_back({e, prior, name, ok});
        ++(ok ? report.verify_pass : report.verify_fail);
      }
    }
  }

  report.tokens = d.timestamps.total_tokens();
  if (mode == SimMode::kElsa) {
    const EvidenceStats st = d.evidence->stats();
    report.evidence_bytes = st.list_bytes;
    report.evidence_index_bytes = st.index_bytes;
  } else {
    for (const auto& es : per_item_es) {
      const EvidenceStats st = es->stats();
      report.evidence_bytes += st.list_bytes;
      report.evidence_index_bytes += st.index_bytes;
    }
  }
  report.shareholder_bytes = d.sharing->bytes_per_shareholder();
  report.seconds_total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string MetricsReport::to_json() const {
  json verifs = json::array();
  for (const auto& v : verifications) {
    verifs.push_back({{"epoch", v.epoch}, {"item_epoch", v.item_epoch}, {"name", v.name},
                      {"ok", v.ok}});
  }
  const json j = {
      {"mode", mode},
      {"seed", seed},
      {"schedule", schedule_json(schedule)},
      {"counts",
       {{"batches", batches},
        {"items", items},
        {"ts_renewals", ts_renewals},
        {"com_renewals", com_renewals},
        {"reshares", reshares},
        {"tokens", tokens},
        {"expected_tokens", expected_tokens}}},
      {"bytes",
       {{"evidence_commitments_timestamps", evidence_bytes},
        {"evidence_index", evidence_index_bytes},
        {"shareholders", shareholder_bytes}}},
      {"verification", {{"pass", verify_pass}, {"fail", verify_fail}, {"records", verifs}}},
      {"seconds",
       {{"store", seconds_store},
        {"renew_ts", seconds_renew_ts},
        {"renew_com", seconds_renew_com},
        {"reshare", seconds_reshare},
        {"verify", seconds_verify},
        {"total", seconds_total}}}};
  return j.dump(2) + "\n";
}

MetricsReport MetricsReport::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    MetricsReport r;
    r.mode = j.at("mode").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.schedule = schedule_from(j.at("schedule"));
    const json& c = j.at("counts");
    r.batches = c.at("batches").get<std::uint64_t>();
    r.items = c.at("items").get<std::uint64_t>();
    r.ts_renewals = c.at("ts_renewals").get<std::uint64_t>();
    r.com_renewals = c.at("com_renewals").get<std::uint64_t>();
    r.reshares = c.at("reshares").get<std::uint64_t>();
    r.tokens = c.at("tokens").get<std::uint64_t>();
    r.expected_tokens = c.at("expected_tokens").get<std::uint64_t>();
    const json& b = j.at("bytes");
    r.evidence_bytes = b.at("evidence_commitments_timestamps").get<std::uint64_t>();
    r.evidence_index_bytes = b.at("evidence_index").get<std::uint64_t>();
    r.shareholder_bytes = b.at("shareholders").get<std::vector<std::uint64_t>>();
    const json& v = j.at("verification");
    r.verify_pass = v.at("pass").get<std::uint64_t>();
    r.verify_fail = v.at("fail").get<std::uint64_t>();
    for (const auto& rec : v.at("records")) {
      r.verifications.push_back({rec.at("epoch").get<std::uint64_t>(),
                                 rec.at("item_epoch").get<std::uint64_t>(),
                                 rec.at("name").get<std::string>(), rec.at("ok").get<bool>()});
    }
    const json& t = j.at("seconds");
    r.seconds_store = t.at("store").get<double>();
    r.seconds_renew_ts = t.at("renew_ts").get<double>();
    r.seconds_renew_com = t.at("renew_com").get<double>();
    r.seconds_reshare = t.at("reshare").get<double>();
    r.seconds_verify = t.at("verify").get<double>();
    r.seconds_total = t.at("total").get<double>();
    return r;
  } catch (const json::exception& e) {
    fail(Errc::kConfig, std::string("report: ") + e.what());
  }
}

namespace {

struct TableRow {
  std::string label;
  std::vector<std::string> cells;
};

std::string seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

std::vector<TableRow> report_rows(const std::vector<MetricsReport>& reports) {
  std::vector<TableRow> rows;
  auto add = [&](std::string label, auto cell) {
    TableRow row{std::move(label), {}};
    for (const auto& r : reports) row.cells.push_back(cell(r));
    rows.push_back(std::move(row));
  };
  using R = const MetricsReport&;
  add("mode", [](R r) { return r.mode; });
  add("items", [](R r) { return std::to_string(r.items); });
  add("store batches", [](R r) { return std::to_string(r.batches); });
  add("timestamp renewals", [](R r) { return std::to_string(r.ts_renewals); });
  add("commitment renewals", [](R r) { return std::to_string(r.com_renewals); });
  add("reshares", [](R r) { return std::to_string(r.reshares); });
  add("timestamps issued", [](R r) { return std::to_string(r.tokens); });
  add("timestamps (closed form)", [](R r) { return std::to_string(r.expected_tokens); });
  add("evidence bytes", [](R r) { return std::to_string(r.evidence_bytes); });
  add("evidence index bytes", [](R r) { return std::to_string(r.evidence_index_bytes); });
  for (std::size_t i = 0; i < (reports.empty() ? 0 : reports[0].shareholder_bytes.size()); ++i) {
    add("shareholder " + std::to_string(i + 1) + " bytes", [i](R r) {
      return i < r.shareholder_bytes.size() ? std::to_string(r.shareholder_bytes[i]) : "-";
    });
  }
  add("verifications passed", [](R r) { return std::to_string(r.verify_pass); });
  add("verifications failed", [](R r) { return std::to_string(r.verify_fail); });
  add("seconds store", [](R r) { return seconds(r.seconds_store); });
  add("seconds timestamp renewal", [](R r) { return seconds(r.seconds_renew_ts); });
  add("seconds commitment renewal", [](R r) { return seconds(r.seconds_renew_com); });
  add("seconds resharing", [](R r) { return seconds(r.seconds_reshare); });
  add("seconds verification", [](R r) { return seconds(r.seconds_verify); });
  add("seconds total", [](R r) { return seconds(r.seconds_total); });
  return rows;
}

}  // namespace

std::string comparison_table(const std::vector<MetricsReport>& reports) {
  const std::vector<TableRow> rows = report_rows(reports);
  std::size_t label_w = 0;
  std::vector<std::size_t> cell_w(reports.size(), 0);
  for (const auto& row : rows) {
    label_w = std::max(label_w, row.label.size());
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      cell_w[i] = std::max(cell_w[i], row.cells[i].size());
    }
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    os << std::left << std::setw(static_cast<int>(label_w)) << row.label;
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      os << "  " << std::right << std::setw(static_cast<int>(cell_w[i])) << row.cells[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string MetricsReport::to_table() const { return comparison_table({*this}); }

}  // namespace elsa
