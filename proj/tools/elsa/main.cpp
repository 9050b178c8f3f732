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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "context.hpp"
#include "elsa/bundle.hpp"
#include "elsa/errors.hpp"
#include "elsa/golden.hpp"
#include "elsa/rpc.hpp"
#include "elsa/shareholder.hpp"
#include "elsa/simulation.hpp"
#include "elsa/transport.hpp"
#include "elsa/verifier.hpp"

namespace fs = std::filesystem;
using namespace elsa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  require(in.good(), Errc::kConfig, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string config;
  bool force = false;

  std::optional<Time> clock_set;
  std::optional<Time> clock_advance;

  std::string id;
  std::string kind;
  std::string descriptor;
  Time valid_from = 0;
  Time t_b = 0;
  std::uint64_t max_length = 1024;

  std::string sig_id;
  std::string vc_id;
  std::string ts_id;
  std::vector<std::string> files;
  std::vector<std::string> names;

  std::string name;
  std::string out_dir = ".";

  std::string pki;
  std::string data;
  std::string evidence;
  Time t_verify = 0;
  Time t_store = 0;

  bool central = false;
  std::vector<std::string> new_shareholders;
  std::size_t new_threshold = 0;

  std::string schedule;
  std::string mode = "both";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> items_per_epoch;
  std::string report_out;
  std::string sim_state_dir;
  std::vector<std::string> reports;

  std::string bind = "127.0.0.1";
  std::uint16_t port = 0;
  std::string shareholder_dir;
  unsigned x = 0;
};

cli::Context open_context(const Options& o) {
  return cli::Context(cli::Config::load(o.config));
}

int cmd_init(const Options& o) {
  cli::Context ctx = open_context(o);
  ctx.archive().init(o.force);
  ctx.save();
  std::cout << "initialized " << ctx.config().shareholders.size() << " shareholders (T="
            << ctx.config().threshold << ") at t=" << ctx.clock().now() << "\n";
  return kExitOk;
}

int cmd_clock(const Options& o) {
  cli::Context ctx = open_context(o);
  if (o.clock_set) ctx.clock().advance_to(*o.clock_set);
  if (o.clock_advance) ctx.clock().advance_by(*o.clock_advance);
  ctx.save();
  std::cout << ctx.clock().now() << "\n";
  return kExitOk;
}

int cmd_add_scheme(const Options& o) {
  cli::Context ctx = open_context(o);
  ctx.add_scheme(o.id, parse_scheme_kind(o.kind), o.descriptor, o.valid_from, o.t_b,
                 o.max_length);
  ctx.save();
  std::cout << "registered " << o.id << " (" << o.kind << ", " << o.descriptor << ") valid ["
            << o.valid_from << ", " << o.t_b << ")\n";
  return kExitOk;
}

int cmd_store(const Options& o) {
  require(o.names.empty() || o.names.size() == o.files.size(), Errc::kConfig,
          "--name must be given once per file or not at all");
  cli::Context ctx = open_context(o);
  std::vector<FileRecord> batch;
  for (std::size_t i = 0; i < o.files.size(); ++i) {
    const std::string name = o.names.empty() ? fs::path(o.files[i]).filename().string() : o.names[i];
    batch.push_back({name, read_binary_file(o.files[i])});
  }
  ctx.archive().store(batch, o.sig_id, o.vc_id, o.ts_id);
  ctx.save();
  std::cout << "stored " << batch.size() << " item(s) at t=" << ctx.clock().now() << "\n";
  return kExitOk;
}

int cmd_retrieve(const Options& o) {
  cli::Context ctx = open_context(o);
  const RetrievedFile rf = ctx.archive().retrieve(o.name);
  fs::create_directories(o.out_dir);
  const fs::path data = fs::path(o.out_dir) / o.name;
  const fs::path ev = fs::path(o.out_dir) / (o.name + ".evidence");
  write_binary_file(data, rf.dat);
  write_bundle_file(ev, rf.dat, rf.evidence);
  ctx.pki().save(fs::path(o.out_dir) / "pki.json");
  std::cout << "wrote " << data.string() << " and " << ev.string() << " ("
            << rf.evidence.entries.size() << " evidence entries)\n";
  return kExitOk;
}

int cmd_verify(const Options& o) {
  const PkiRegistry pki = PkiRegistry::load(o.pki);
  const Bytes dat = read_binary_file(o.data);
  BundleFile bundle;
  try {
    bundle = read_bundle_file(o.evidence);
  } catch (const Error& e) {
    if (e.code() != Errc::kDecode) throw;
    std::cout << "INVALID: " << e.what() << "\n";
    return kExitFailure;
  }
  if (bundle.dat_hash != sha256(dat)) {
    std::cout << "INVALID: data does not match the bundle's data hash\n";
    return kExitFailure;
  }
  const VerifyResult r = verify_evidence(pki, o.t_verify, dat, o.t_store, bundle.evidence);
  if (!r.ok) {
    std::cout << "INVALID: entry " << r.entry << ": " << r.reason << "\n";
    return kExitFailure;
  }
  std::cout << "VALID (" << bundle.evidence.entries.size() << " entries, t_verify=" << o.t_verify
            << ")\n";
  return kExitOk;
}

int cmd_renew_ts(const Options& o) {
  cli::Context ctx = open_context(o);
  const bool renewed = ctx.archive().renew_ts(o.vc_id, o.ts_id);
  ctx.save();
  std::cout << (renewed ? "timestamp renewed" : "nothing to renew") << " at t="
            << ctx.clock().now() << "\n";
  return kExitOk;
}

int cmd_renew_com(const Options& o) {
  cli::Context ctx = open_context(o);
  ctx.archive().renew_com(o.vc_id, o.ts_id);
  ctx.save();
  std::cout << "commitments renewed at t=" << ctx.clock().now() << "\n";
  return kExitOk;
}

int cmd_renew_shares(const Options& o) {
  cli::Context ctx = open_context(o);
  ctx.archive().renew_shares(o.central);
  ctx.save();
  std::cout << "shares renewed" << (o.central ? " (central)" : "") << "\n";
  return kExitOk;
}

int cmd_migrate(const Options& o) {
  cli::Context ctx = open_context(o);
  require(o.new_threshold >= 1 && o.new_threshold <= o.new_shareholders.size(), Errc::kConfig,
          "need 1 <= --threshold <= number of --shareholder");
  Archive& archive = ctx.archive();
  archive.renew_sharing(ctx.make_sharing(o.new_shareholders, o.new_threshold));
  cli::Config updated = ctx.config();
  updated.shareholders = o.new_shareholders;
  updated.threshold = o.new_threshold;
  updated.save();
  ctx.save();
  std::cout << "migrated to " << o.new_shareholders.size() << " shareholders (T="
            << o.new_threshold << ")\n";
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  Schedule schedule = o.schedule.empty() ? Schedule{} : Schedule::from_json(read_text(o.schedule));
  if (o.horizon) schedule.horizon = *o.horizon;
  if (o.items_per_epoch) schedule.items_per_epoch = *o.items_per_epoch;
  std::vector<SimMode> modes;
  if (o.mode == "both") {
    modes = {SimMode::kElsa, SimMode::kBaseline};
  } else {
    modes = {parse_sim_mode(o.mode)};
  }
  std::vector<MetricsReport> reports;
  for (SimMode m : modes) {
    std::optional<fs::path> dir;
    if (!o.sim_state_dir.empty()) dir = fs::path(o.sim_state_dir) / sim_mode_name(m);
    reports.push_back(simulate(schedule, m, o.seed, dir));
  }
  std::cout << comparison_table(reports);
  if (!o.report_out.empty()) {
    std::ofstream out(o.report_out, std::ios::trunc);
    require(out.good(), Errc::kIo, "cannot write " + o.report_out);
    if (reports.size() == 1) {
      out << reports[0].to_json();
    } else {
      out << "[\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        out << reports[i].to_json() << (i + 1 < reports.size() ? ",\n" : "");
      }
      out << "]\n";
    }
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.tokens == r.expected_tokens && r.verify_fail == 0;
  return ok ? kExitOk : kExitFailure;
}

int cmd_report(const Options& o) {
  std::vector<MetricsReport> reports;
  for (const auto& path : o.reports) {
    const std::string text = read_text(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      // A file written by `simulate --mode both`: split the array.
      const auto arr = nlohmann::json::parse(text);
      for (const auto& r : arr) reports.push_back(MetricsReport::from_json(r.dump()));
    } else {
      reports.push_back(MetricsReport::from_json(text));
    }
  }
  std::cout << comparison_table(reports);
  return kExitOk;
}

int cmd_golden(const Options& o) {
  const GoldenTrace trace = build_golden_trace();
  write_golden_files(trace, o.out_dir);
  std::cout << "wrote golden_pki.json, golden.dat and golden.evidence to " << o.out_dir
            << " (verify with --t-store " << trace.t_store << " --t-verify " << trace.t_verify
            << ")\n";
  return kExitOk;
}

void serve(const Handler& handler, const Options& o, const std::string& what) {
  TcpServer server(o.bind, o.port, handler);
  std::cout << what << " listening on " << o.bind << ":" << server.port() << std::endl;
  server.run();
}

int cmd_serve_shareholder(const Options& o) {
  require(o.x >= 1 && o.x <= 255, Errc::kConfig, "--x must be in 1..255");
  auto holder = Shareholder::open(o.shareholder_dir, static_cast<std::uint8_t>(o.x),
                                  std::make_unique<SystemRandom>());
  serve(shareholder_handler(holder), o, "shareholder " + std::to_string(o.x));
  return kExitOk;
}

// Reloads clock, PKI and keys for every request so that `elsa clock` and
// `elsa add-scheme` take effect without a restart.
class ReloadingEvidence final : public EvidenceServiceApi {
 public:
  explicit ReloadingEvidence(cli::Config config) : config_(std::move(config)) {}

  void add_com(const std::vector<std::string>& names, const std::string& vc_id,
               const Digest& c, const std::string& ts_id) override {
    with([&](cli::Context&, EvidenceService& es) { es.add_com(names, vc_id, c, ts_id); });
  }
  bool renew_ts(const std::string& vc_id, const std::string& ts_id) override {
    bool out = false;
    with([&](cli::Context&, EvidenceService& es) { out = es.renew_ts(vc_id, ts_id); });
    return out;
  }
  void add_com_renew(const NamePositions& positions, const std::string& vc_id,
                     const Digest& c, const std::string& ts_id) override {
    with([&](cli::Context&, EvidenceService& es) { es.add_com_renew(positions, vc_id, c, ts_id); });
  }
  EvidenceList get_evidence(const std::string& name) override {
    EvidenceList out;
    with([&](cli::Context&, EvidenceService& es) { out = es.get_evidence(name); });
    return out;
  }
  std::vector<std::string> names() override {
    std::vector<std::string> out;
    with([&](cli::Context&, EvidenceService& es) { out = es.names(); });
    return out;
  }
  EvidenceStats stats() override {
    EvidenceStats out;
    with([&](cli::Context&, EvidenceService& es) { out = es.stats(); });
    return out;
  }
  void wipe() override {
    with([&](cli::Context&, EvidenceService& es) { es.wipe(); });
  }

 private:
  template <typename F>
  void with(F&& f) {
    cli::Context ctx(config_);
    EvidenceService es(ctx.pki(), ctx.timestamps(), ctx.rng(), config_.state_dir / "es");
    f(ctx, es);
    ctx.save();
  }
  cli::Config config_;
};

int cmd_serve_evidence(const Options& o) {
  const cli::Config config = cli::Config::load(o.config);
  serve(evidence_handler(std::make_shared<ReloadingEvidence>(config)), o, "evidence service");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elsa: long-term secure archive with renewable integrity evidence"};
  app.require_subcommand(1);
  Options o;

  auto config_opt = [&](CLI::App* sub) {
    sub->add_option("-c,--config", o.config, "config file (JSON)")->required();
  };

  auto* init = app.add_subcommand("init", "create empty shareholder stores and evidence service");
  config_opt(init);
  init->add_flag("--force", o.force, "wipe existing state");

  auto* clock = app.add_subcommand("clock", "show or move the logical clock");
  config_opt(clock);
  clock->add_option("--set", o.clock_set, "move the clock forward to this time");
  clock->add_option("--advance", o.clock_advance, "advance the clock by this many ticks");

  auto* add = app.add_subcommand("add-scheme", "register a scheme instance in the PKI");
  config_opt(add);
  add->add_option("--id", o.id)->required();
  add->add_option("--kind", o.kind, "signature, timestamp or vector-commitment")->required();
  add->add_option("--descriptor", o.descriptor)->required();
  add->add_option("--valid-from", o.valid_from);
  add->add_option("--t-b", o.t_b, "breakage time")->required();
  add->add_option("--max-length", o.max_length, "vector length bound");

  auto* store = app.add_subcommand("store", "store a batch of files under one commitment");
  config_opt(store);
  store->add_option("--sig", o.sig_id)->required();
  store->add_option("--vc", o.vc_id)->required();
  store->add_option("--ts", o.ts_id)->required();
  store->add_option("--name", o.names, "item names (default: file names)");
  store->add_option("files", o.files)->required()->check(CLI::ExistingFile);

  auto* retrieve = app.add_subcommand("retrieve", "reconstruct an item and export its evidence");
  config_opt(retrieve);
  retrieve->add_option("name", o.name)->required();
  retrieve->add_option("-o,--out", o.out_dir, "output directory");

  auto* verify_cmd = app.add_subcommand("verify", "verify data against an evidence bundle");
  verify_cmd->add_option("--pki", o.pki)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--data", o.data)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--evidence", o.evidence)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--t-verify", o.t_verify)->required();
  verify_cmd->add_option("--t-store", o.t_store)->required();

  auto* renew_ts = app.add_subcommand("renew-ts", "renew timestamps of all evidence lists");
  config_opt(renew_ts);
  renew_ts->add_option("--vc", o.vc_id)->required();
  renew_ts->add_option("--ts", o.ts_id)->required();

  auto* renew_com = app.add_subcommand("renew-com", "recommit data and evidence");
  config_opt(renew_com);
  renew_com->add_option("--vc", o.vc_id)->required();
  renew_com->add_option("--ts", o.ts_id)->required();

  auto* renew_shares = app.add_subcommand("renew-shares", "proactively renew all shares");
  config_opt(renew_shares);
  renew_shares->add_flag("--central", o.central, "reconstruct and reshare at the client");

  auto* migrate = app.add_subcommand("migrate-sharing", "move all items to new shareholders");
  config_opt(migrate);
  migrate->add_option("--shareholder", o.new_shareholders, "directory or tcp://host:port")
      ->required();
  migrate->add_option("--threshold", o.new_threshold)->required();

  auto* sim = app.add_subcommand("simulate", "run the compressed-timeline simulation");
  sim->add_option("--schedule", o.schedule, "schedule JSON")->check(CLI::ExistingFile);
  sim->add_option("--mode", o.mode, "elsa, baseline or both");
  sim->add_option("--seed", o.seed);
  sim->add_option("--horizon", o.horizon);
  sim->add_option("--items-per-epoch", o.items_per_epoch);
  sim->add_option("--report", o.report_out, "write the JSON report here");
  sim->add_option("--state-dir", o.sim_state_dir, "persist simulated services here");

  auto* report = app.add_subcommand("report", "tabulate JSON reports");
  report->add_option("reports", o.reports)->required()->check(CLI::ExistingFile);

  auto* golden = app.add_subcommand("golden", "write the golden evidence trace");
  golden->add_option("-o,--out", o.out_dir, "output directory");

  auto* serve_sh = app.add_subcommand("serve-shareholder", "serve one shareholder over TCP");
  serve_sh->add_option("--dir", o.shareholder_dir)->required();
  serve_sh->add_option("--x", o.x, "shareholder index")->required();
  serve_sh->add_option("--bind", o.bind);
  serve_sh->add_option("--port", o.port, "0 picks a free port");

  auto* serve_es = app.add_subcommand("serve-evidence", "serve the evidence service over TCP");
  config_opt(serve_es);
  serve_es->add_option("--bind", o.bind);
  serve_es->add_option("--port", o.port, "0 picks a free port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::pair<CLI::App*, int (*)(const Options&)>> dispatch = {
      {init, cmd_init},
      {clock, cmd_clock},
      {add, cmd_add_scheme},
      {store, cmd_store},
      {retrieve, cmd_retrieve},
      {verify_cmd, cmd_verify},
      {renew_ts, cmd_renew_ts},
      {renew_com, cmd_renew_com},
      {renew_shares, cmd_renew_shares},
      {migrate, cmd_migrate},
      {sim, cmd_simulate},
      {report, cmd_report},
      {golden, cmd_golden},
      {serve_sh, cmd_serve_shareholder},
      {serve_es, cmd_serve_evidence},
  };
  try {
    for (const auto& [sub, fn] : dispatch) {
      if (sub->parsed()) return fn(o);
    }
  } catch (const Error& e) {
    std::cerr << "elsa: " << e.what() << "\n";
    return e.code() == Errc::kConfig ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "elsa: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
