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

#include <map>
#include <set>

#include "elsa/bundle.hpp"
#include "elsa/deployment.hpp"
#include "elsa/errors.hpp"
#include "elsa/golden.hpp"
#include "elsa/rpc.hpp"
#include "elsa/transport.hpp"
#include "elsa/verifier.hpp"
#include "tamper.hpp"
#include "test_support.hpp"

namespace elsa {
namespace {

template <typename F>
void expect_errc(Errc code, F&& f) {
  try {
    f();
    FAIL() << "expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

std::vector<FileRecord> files(const std::vector<std::string>& names, RandomSource& rng) {
  std::vector<FileRecord> out;
  for (const auto& n : names) out.push_back({n, rng.bytes(48)});
  return out;
}

std::unique_ptr<Deployment> basic_deployment(ArchiveOptions options = {}, std::uint64_t seed = 1) {
  DeploymentConfig cfg;
  cfg.seed = seed;
  cfg.options = options;
  auto d = std::make_unique<Deployment>(cfg);
  d->add_signature_scheme("sig", "mss-sha256-h5", 0, 100);
  d->add_signature_scheme("sig-ed", "ed25519", 0, 100);
  d->add_timestamp_scheme("ts-old", "ed25519", 0, 5);
  d->add_timestamp_scheme("ts-new", "mss-sha256-h4", 0, 100);
  d->add_vc_scheme("vc-old", "hiding-hm256", 4, 0, 6);
  d->add_vc_scheme("vc-new", "hiding-hm512", 8, 0, 100);
  d->add_vc_scheme("rvc", "merkle-sha256", 8, 0, 8);
  return d;
}

std::size_t decom_items(Deployment& d) {
  std::size_t n = 0;
  for (const auto& name : d.shareholders[0]->names()) n += name.starts_with("decom/");
  return n;
}

TEST(Archive, StoreCounts) {
  auto d = basic_deployment();
  DeterministicRandom rng(1);
  const std::uint64_t budget = d->keys.get("sig").remaining();
  d->clock.advance_to(1);
  d->archive->store(files({"a", "b", "c"}, rng), "sig", "vc-old", "ts-old");
  EXPECT_EQ(budget - d->keys.get("sig").remaining(), 3u);
  EXPECT_EQ(d->timestamps.total_tokens(), 1u);
  const auto s = d->evidence->stats();
  EXPECT_EQ(s.lists, 1u);
  EXPECT_EQ(s.names, 3u);
  for (const auto& sh : d->shareholders) EXPECT_EQ(sh->info().items, 6u);
  EXPECT_EQ(decom_items(*d), 3u);
  EXPECT_EQ(d->archive->names(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Archive, StoreRejections) {
  auto d = basic_deployment();
  DeterministicRandom rng(2);
  d->clock.advance_to(1);
  expect_errc(Errc::kLength,
              [&] { d->archive->store(files({"1", "2", "3", "4", "5"}, rng), "sig", "vc-old", "ts-old"); });
  expect_errc(Errc::kLength, [&] { d->archive->store({}, "sig", "vc-old", "ts-old"); });
  d->archive->store(files({"a"}, rng), "sig", "vc-old", "ts-old");
  expect_errc(Errc::kDuplicateName,
              [&] { d->archive->store(files({"b", "a"}, rng), "sig", "vc-old", "ts-old"); });
  expect_errc(Errc::kDuplicateName,
              [&] { d->archive->store(files({"c", "c"}, rng), "sig", "vc-old", "ts-old"); });
  expect_errc(Errc::kParameter, [&] { d->archive->store(files({"d"}, rng), "vc-old", "vc-old", "ts-old"); });
  expect_errc(Errc::kUnregisteredScheme,
              [&] { d->archive->store(files({"d"}, rng), "sig", "vc-none", "ts-old"); });
  d->clock.advance_to(6);
  expect_errc(Errc::kSchemeExpired,
              [&] { d->archive->store(files({"d"}, rng), "sig", "vc-old", "ts-new"); });
  expect_errc(Errc::kSchemeExpired,
              [&] { d->archive->store(files({"d"}, rng), "sig", "vc-new", "ts-old"); });
  EXPECT_EQ(d->archive->names(), std::vector<std::string>{"a"});
  expect_errc(Errc::kNotFound, [&] { d->archive->retrieve("zzz"); });
}

TEST(Archive, InitRefusesExistingState) {
  auto d = basic_deployment();
  DeterministicRandom rng(3);
  d->archive->init(false);
  d->clock.advance_to(1);
  d->archive->store(files({"a"}, rng), "sig", "vc-old", "ts-old");
  expect_errc(Errc::kAlreadyInitialized, [&] { d->archive->init(false); });
  d->archive->init(true);
  EXPECT_TRUE(d->archive->names().empty());
  for (const auto& sh : d->shareholders) EXPECT_EQ(sh->info().items, 0u);
}

TEST(Archive, RetrieveRightAfterStoreVerifies) {
  auto d = basic_deployment();
  DeterministicRandom rng(4);
  d->clock.advance_to(2);
  const auto batch = files({"a", "b"}, rng);
  d->archive->store(batch, "sig", "vc-old", "ts-old");
  const RetrievedFile rf = d->archive->retrieve("b");
  EXPECT_EQ(rf.dat, batch[1].dat);
  ASSERT_EQ(rf.evidence.entries.size(), 1u);
  ASSERT_TRUE(rf.evidence.entries[0].com->d.has_value());
  EXPECT_EQ(rf.evidence.entries[0].com->position, 1u);
  EXPECT_TRUE(verify(d->pki, 2, rf.dat, 2, rf.evidence));
  EXPECT_TRUE(verify(d->pki, 4, rf.dat, 2, rf.evidence));
  EXPECT_FALSE(verify(d->pki, 4, rf.dat, 1, rf.evidence));  // wrong t_store
  EXPECT_FALSE(verify(d->pki, 1, rf.dat, 2, rf.evidence));  // token from the future
  // Once the timestamp scheme is broken, unrenewed evidence is stale.
  EXPECT_FALSE(verify(d->pki, 5, rf.dat, 2, rf.evidence));
  const auto r = verify_evidence(d->pki, 5, rf.dat, 2, rf.evidence);
  EXPECT_EQ(r.entry, 0u);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Archive, FourEntryTrace) {
  auto d = basic_deployment();
  DeterministicRandom rng(5);
  d->clock.advance_to(1);
  const auto batch = files({"a", "b", "c"}, rng);
  d->archive->store(batch, "sig", "vc-old", "ts-old");
  d->clock.advance_to(2);
  EXPECT_TRUE(d->archive->renew_ts("rvc", "ts-old"));
  d->clock.advance_to(3);
  EXPECT_TRUE(d->archive->renew_ts("rvc", "ts-new"));
  const std::size_t decoms = decom_items(*d);
  d->clock.advance_to(4);
  d->archive->renew_com("vc-new", "ts-new");
  EXPECT_EQ(decom_items(*d), decoms + 3);
  EXPECT_EQ(d->timestamps.total_tokens(), 4u);

  d->clock.advance_to(20);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const RetrievedFile rf = d->archive->retrieve(batch[i].name);
    const EvidenceList& e = rf.evidence.entries;
    ASSERT_EQ(e.size(), 4u);
    EXPECT_TRUE(e[0].com && e[0].com->d);
    EXPECT_TRUE(e[1].renew.has_value());
    EXPECT_TRUE(e[2].renew.has_value());
    EXPECT_TRUE(e[3].com && e[3].com->d);
    // All of ts-old, vc-old and rvc are broken by now.
    const auto r = verify_evidence(d->pki, 20, rf.dat, 1, rf.evidence);
    EXPECT_TRUE(r.ok) << r.reason << " at entry " << r.entry;
    EXPECT_FALSE(verify(d->pki, 20, rf.dat, 2, rf.evidence));

    // Without the final commitment renewal the chain would not survive.
    EvidenceBundle cut = rf.evidence;
    cut.entries.pop_back();
    EXPECT_TRUE(verify(d->pki, 4, rf.dat, 1, cut));
    EXPECT_FALSE(verify(d->pki, 20, rf.dat, 1, cut));
  }
}

TEST(Archive, SignCommitmentMode) {
  ArchiveOptions opts;
  opts.sign_commitment = true;
  auto d = basic_deployment(opts);
  DeterministicRandom rng(6);
  const std::uint64_t budget = d->keys.get("sig").remaining();
  d->clock.advance_to(1);
  const auto batch = files({"a", "b", "c"}, rng);
  d->archive->store(batch, "sig", "vc-old", "ts-old");
  EXPECT_EQ(budget - d->keys.get("sig").remaining(), 1u);
  d->clock.advance_to(3);
  d->archive->renew_com("vc-new", "ts-new");
  d->clock.advance_to(30);
  for (const auto& f : batch) {
    const RetrievedFile rf = d->archive->retrieve(f.name);
    EXPECT_TRUE(rf.evidence.s.is_tuple());
    EXPECT_TRUE(verify(d->pki, 30, rf.dat, 1, rf.evidence));
    RetrievedFile bad = rf;
    bad.evidence.s.items()[0] = Value::bytes(Bytes(bad.evidence.s.at(0).as_bytes().size(), 0));
    EXPECT_FALSE(verify(d->pki, 30, rf.dat, 1, bad.evidence));
    Bytes dat = rf.dat;
    dat[0] ^= 1;
    EXPECT_FALSE(verify(d->pki, 30, dat, 1, rf.evidence));
  }
}

TEST(Archive, FailedCommitmentRenewalLeavesEvidenceUnchanged) {
  auto d = basic_deployment();
  auto es = d->make_evidence_service();
  bool es_down = false;
  const Handler inner = evidence_handler(es);
  auto archive = d->make_archive(std::make_shared<EvidenceProxy>(
      std::make_shared<LoopbackTransport>([&](const Bytes& request) {
        if (es_down) throw Error(Errc::kTransport, "evidence service unreachable");
        return inner(request);
      })));
  DeterministicRandom rng(7);
  d->clock.advance_to(1);
  archive->store(files({"a", "b"}, rng), "sig", "vc-old", "ts-old");
  const EvidenceList before = es->get_evidence("a");
  const auto tokens = d->timestamps.total_tokens();
  d->clock.advance_to(3);

  es_down = true;
  expect_errc(Errc::kTransport, [&] { archive->renew_com("vc-new", "ts-new"); });
  es_down = false;
  EXPECT_EQ(es->get_evidence("a"), before);
  EXPECT_EQ(d->timestamps.total_tokens(), tokens);

  // A shareholder down: the opening writes fail first.
  d->shareholders[1]->set_online(false);
  expect_errc(Errc::kUnavailable, [&] { archive->renew_com("vc-new", "ts-new"); });
  d->shareholders[1]->set_online(true);
  EXPECT_EQ(es->get_evidence("a"), before);
  EXPECT_EQ(d->timestamps.total_tokens(), tokens);

  // Schemes that are no longer valid are refused up front.
  d->clock.advance_to(5);
  expect_errc(Errc::kSchemeExpired, [&] { archive->renew_com("vc-new", "ts-old"); });
  EXPECT_EQ(es->get_evidence("a"), before);

  // Too late now: the first timestamp broke before anything was renewed.
  archive->renew_com("vc-new", "ts-new");
  const RetrievedFile rf = archive->retrieve("a");
  EXPECT_EQ(rf.evidence.entries.size(), 2u);
  EXPECT_TRUE(verify(d->pki, 4, rf.dat, 1, EvidenceBundle{rf.evidence.sig_id, rf.evidence.s,
                                                         {rf.evidence.entries[0]}}));
  EXPECT_FALSE(verify(d->pki, 50, rf.dat, 1, rf.evidence));
}

TEST(Archive, TimelyCommitmentRenewalVerifiesLater) {
  auto d = basic_deployment();
  DeterministicRandom rng(17);
  d->clock.advance_to(1);
  d->archive->store(files({"a"}, rng), "sig", "vc-old", "ts-old");
  d->clock.advance_to(4);
  d->archive->renew_com("vc-new", "ts-new");
  const RetrievedFile rf = d->archive->retrieve("a");
  EXPECT_TRUE(verify(d->pki, 50, rf.dat, 1, rf.evidence));
}

TEST(Archive, ShareRenewalsKeepEvidenceValid) {
  auto d = basic_deployment();
  DeterministicRandom rng(8);
  d->clock.advance_to(1);
  const auto batch = files({"a", "b", "c"}, rng);
  d->archive->store(batch, "sig", "vc-new", "ts-new");
  d->archive->renew_shares(false);
  d->archive->renew_shares(true);
  for (const auto& sh : d->shareholders) EXPECT_EQ(sh->info().epoch, 2u);

  DeploymentConfig cfg;
  cfg.shareholders = 5;
  cfg.seed = 44;
  Deployment other(cfg);
  d->archive->renew_sharing(other.sharing);
  for (const auto& sh : d->shareholders) EXPECT_TRUE(sh->is_shut_down());
  for (const auto& f : batch) {
    const RetrievedFile rf = d->archive->retrieve(f.name);
    EXPECT_EQ(rf.dat, f.dat);
    EXPECT_TRUE(verify(d->pki, 9, rf.dat, 1, rf.evidence));
  }
  d->clock.advance_to(2);
  d->archive->renew_com("vc-new", "ts-new");
  EXPECT_EQ(d->archive->retrieve("a").evidence.entries.size(), 2u);
}

TEST(Archive, EvidenceServiceSeesNoPlaintextOrOpenings) {
  auto d = basic_deployment();
  auto es = d->make_evidence_service();
  auto recorder = std::make_shared<RecordingTransport>(
      std::make_shared<LoopbackTransport>(evidence_handler(es)));
  auto archive = d->make_archive(std::make_shared<EvidenceProxy>(recorder));
  DeterministicRandom rng(9);
  d->clock.advance_to(1);
  const auto batch = files({"a", "b", "c"}, rng);
  archive->store(batch, "sig-ed", "vc-old", "ts-old");
  d->clock.advance_to(2);
  archive->renew_ts("rvc", "ts-old");
  d->clock.advance_to(3);
  archive->renew_com("vc-new", "ts-new");

  std::vector<Bytes> secrets;
  for (const auto& f : batch) {
    const RetrievedFile rf = archive->retrieve(f.name);
    EXPECT_TRUE(verify(d->pki, 10, rf.dat, 1, rf.evidence));
    secrets.push_back(f.dat);
    secrets.push_back(rf.evidence.s.as_bytes());
    for (const auto& e : rf.evidence.entries) {
      if (!e.com) continue;
      secrets.push_back(e.com->d->hiding->decommitment.x);
      secrets.push_back(encode(e.com->d->to_value()));
    }
  }
  const auto requests = recorder->requests();
  ASSERT_FALSE(requests.empty());
  for (const auto& req : requests) {
    for (const auto& s : secrets) EXPECT_FALSE(contains(req, s));
  }
}

TEST(Archive, SingleShareholderViewHasNoContentDependence) {
  // Two archives that differ only in the content of one file: the records a
  // single shareholder (T - 1 = 1 at T = 2) keeps have identical names and
  // sizes, and none holds the plaintext.
  std::map<std::string, std::size_t> layout[2];
  Bytes content[2];
  for (int variant = 0; variant < 2; ++variant) {
    DeploymentConfig cfg;
    cfg.shareholders = 3;
    cfg.threshold = 2;
    cfg.seed = 5;
    Deployment d(cfg);
    d.add_signature_scheme("sig", "ed25519", 0, 100);
    d.add_timestamp_scheme("ts", "ed25519", 0, 100);
    d.add_vc_scheme("vc", "hiding-hm256", 4, 0, 100);
    content[variant] = Bytes(64, static_cast<std::uint8_t>(variant == 0 ? 0x00 : 0xFF));
    d.clock.advance_to(1);
    d.archive->store({{"secret", content[variant]}, {"public", to_bytes("same in both")}}, "sig",
                     "vc", "ts");
    const Shareholder& sh = *d.shareholders[0];
    for (const auto& name : d.shareholders[0]->names()) {
      const Share s = *d.shareholders[0]->get(name);
      layout[variant][name] = s.y.size();
      EXPECT_FALSE(contains(s.y, content[variant]));
    }
    EXPECT_EQ(sh.store().size(), 4u);
  }
  EXPECT_EQ(layout[0], layout[1]);
}

TEST(Archive, RandomHonestSchedules) {
  // Generation g schemes break at 10 g + 12; at 10 g + 10 everything is
  // moved to generation g + 1.
  constexpr int kGenerations = 6;
  for (std::uint64_t seed : {1, 2, 3}) {
    DeploymentConfig cfg;
    cfg.seed = seed;
    Deployment d(cfg);
    d.add_signature_scheme("sig", "ed25519", 0, 1000);
    for (int g = 0; g < kGenerations; ++g) {
      const Time t_b = 10 * static_cast<Time>(g) + 12;
      const std::string s = std::to_string(g);
      d.add_timestamp_scheme("ts-" + s, "ed25519", 0, t_b);
      d.add_vc_scheme("vc-" + s, g % 2 ? "hiding-hm256" : "merkle-sha256", 64, 0, t_b);
      d.add_vc_scheme("rvc-" + s, "merkle-sha512", 64, 0, t_b);
    }
    DeterministicRandom rng(seed, 77);
    std::map<std::string, std::pair<Bytes, Time>> stored;
    int counter = 0, checks = 0;
    for (Time t = 1; t < 10 * (kGenerations - 1); ++t) {
      d.clock.advance_to(t);
      const std::string g = std::to_string(t / 10);
      if (t % 10 == 0 && !stored.empty()) {
        d.archive->renew_com("vc-" + g, "ts-" + g);
        d.archive->renew_ts("rvc-" + g, "ts-" + g);
        continue;
      }
      switch (rng.uniform(5)) {
        case 0:
        case 1: {
          std::vector<FileRecord> batch;
          for (std::uint64_t i = 0, n = 1 + rng.uniform(4); i < n; ++i) {
            batch.push_back({"f" + std::to_string(counter++), rng.bytes(1 + rng.uniform(40))});
            stored[batch.back().name] = {batch.back().dat, t};
          }
          d.archive->store(batch, "sig", "vc-" + g, "ts-" + g);
          break;
        }
        case 2:
          d.archive->renew_ts("rvc-" + g, "ts-" + g);
          break;
        case 3:
          if (!stored.empty()) d.archive->renew_com("vc-" + g, "ts-" + g);
          break;
        default:
          d.archive->renew_shares(rng.uniform(2) == 0);
          break;
      }
      if (stored.empty()) continue;
      auto it = stored.begin();
      std::advance(it, static_cast<long>(rng.uniform(stored.size())));
      const RetrievedFile rf = d.archive->retrieve(it->first);
      EXPECT_EQ(rf.dat, it->second.first);
      const auto r = verify_evidence(d.pki, t, rf.dat, it->second.second, rf.evidence);
      EXPECT_TRUE(r.ok) << "seed " << seed << " t=" << t << " " << it->first << ": " << r.reason;
      ++checks;
    }
    EXPECT_GT(checks, 30);
  }
}

TEST(Bundle, ExportImportRoundTrip) {
  auto d = basic_deployment();
  DeterministicRandom rng(10);
  d->clock.advance_to(1);
  d->archive->store(files({"a", "b"}, rng), "sig", "vc-old", "ts-old");
  const RetrievedFile rf = d->archive->retrieve("a");
  const Bytes file = export_bundle(rf.dat, rf.evidence);
  EXPECT_EQ(to_string(ByteView(file).first(4)), "ELSA");
  EXPECT_EQ(file[4], kBundleVersion);
  const BundleFile back = import_bundle(file);
  EXPECT_EQ(back.evidence, rf.evidence);
  EXPECT_EQ(back.dat_hash, sha256(rf.dat));
  EXPECT_EQ(export_bundle(rf.dat, back.evidence), file);

  Bytes bad = file;
  bad[0] = 'X';
  EXPECT_THROW(import_bundle(bad), Error);
  bad = file;
  bad[4] = 0x02;
  EXPECT_THROW(import_bundle(bad), Error);
  EXPECT_THROW(import_bundle(ByteView(file).first(file.size() - 1)), Error);

  testing::TempDir dir;
  write_bundle_file(dir.path() / "a.evidence", rf.dat, rf.evidence);
  EXPECT_EQ(read_bundle_file(dir.path() / "a.evidence").evidence, rf.evidence);
  EXPECT_THROW(read_bundle_file(dir.path() / "missing.evidence"), Error);
}

TEST(Golden, CommittedFilesAreReproducedByteForByte) {
  const GoldenTrace trace = build_golden_trace();
  testing::TempDir dir;
  write_golden_files(trace, dir.path());
  for (const char* f : {"golden_pki.json", "golden.dat", "golden.evidence"}) {
    EXPECT_EQ(read_binary_file(dir.path() / f), read_binary_file(testing::data_dir() / f)) << f;
  }
}

TEST(Golden, CommittedBundleVerifies) {
  const PkiRegistry pki = PkiRegistry::load(testing::data_dir() / "golden_pki.json");
  const Bytes dat = read_binary_file(testing::data_dir() / "golden.dat");
  const BundleFile b = read_bundle_file(testing::data_dir() / "golden.evidence");
  EXPECT_EQ(b.dat_hash, sha256(dat));
  ASSERT_EQ(b.evidence.entries.size(), 4u);
  const auto r = verify_evidence(pki, 10, dat, 1, b.evidence);
  EXPECT_TRUE(r.ok) << r.reason;
  // The trace outlives its first timestamp and commitment schemes.
  EXPECT_FALSE(valid_at(pki, b.evidence.entries[0].ts.scheme_id, 10));
  EXPECT_FALSE(valid_at(pki, b.evidence.entries[0].com->vc_id, 10));
  EXPECT_FALSE(verify(pki, 10, dat, 2, b.evidence));
  EXPECT_FALSE(verify(pki, 100, dat, 1, b.evidence));
}

TEST(Golden, SampledTampersAreRejected) {
  // The exhaustive version runs in the acceptance binary; here every
  // field gets a cheap sample by truncating dat to a few bytes.
  const GoldenTrace trace = build_golden_trace();
  const EvidenceBundle& b = trace.retrieved.evidence;
  const Value v = testing::bundle_value(b);
  EXPECT_EQ(testing::bundle_from_value(v), b);
  EvidenceBundle moved = b;
  std::swap(moved.entries[1], moved.entries[2]);
  EXPECT_FALSE(verify(trace.deployment->pki, trace.t_verify, trace.dat, trace.t_store, moved));
  EvidenceBundle dropped = b;
  dropped.entries.erase(dropped.entries.begin() + 1);
  EXPECT_FALSE(verify(trace.deployment->pki, trace.t_verify, trace.dat, trace.t_store, dropped));
  EvidenceBundle empty = b;
  empty.entries.clear();
  EXPECT_FALSE(verify(trace.deployment->pki, trace.t_verify, trace.dat, trace.t_store, empty));
  EvidenceBundle no_opening = b;
  no_opening.entries[3].com->d.reset();
  EXPECT_FALSE(verify(trace.deployment->pki, trace.t_verify, trace.dat, trace.t_store, no_opening));
}

}  // namespace
}  // namespace elsa
