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

#include "context.hpp"

#include <fstream>
#include <sstream>

#include "elsa/errors.hpp"
#include "elsa/rpc.hpp"
#include "elsa/shareholder.hpp"
#include "elsa/signature.hpp"
#include "elsa/transport.hpp"
#include "elsa/vector_commitment.hpp"
#include "json.hpp"

namespace elsa::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  require(in.good(), Errc::kConfig, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    require(out.good(), Errc::kIo, "cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, p);
}

bool is_tcp(const std::string& endpoint) { return endpoint.starts_with("tcp://"); }

}  // namespace

Config Config::load(const fs::path& path) {
  Config c;
  c.path = fs::absolute(path);
  try {
    const json j = json::parse(slurp(path));
    c.state_dir = c.resolve(j.at("state_dir").get<std::string>());
    c.threshold = j.at("threshold").get<std::size_t>();
    c.shareholders = j.at("shareholders").get<std::vector<std::string>>();
    if (j.contains("evidence_service")) {
      c.evidence_service = j.at("evidence_service").get<std::string>();
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("sign_commitment")) c.sign_commitment = j.at("sign_commitment").get<bool>();
  } catch (const json::exception& e) {
    fail(Errc::kConfig, "config " + path.string() + ": " + e.what());
  }
  require(c.threshold >= 1 && c.threshold <= c.shareholders.size(), Errc::kConfig,
          "config: need 1 <= threshold <= number of shareholders");
  return c;
}

void Config::save() const {
  json j = {{"state_dir", state_dir.string()},
            {"threshold", threshold},
            {"shareholders", shareholders},
            {"evidence_service", evidence_service},
            {"sign_commitment", sign_commitment}};
  if (seed) j["seed"] = *seed;
  write_text(path, j.dump(2) + "\n");
}

fs::path Config::resolve(const std::string& p) const {
  const fs::path candidate(p);
  return candidate.is_absolute() ? candidate : path.parent_path() / candidate;
}

Context::Context(Config config) : config_(std::move(config)) {
  fs::create_directories(config_.state_dir / "keys");
  if (fs::exists(config_.state_dir / "clock")) {
    clock_.advance_to(std::stoull(slurp(config_.state_dir / "clock")));
  }
  if (fs::exists(config_.state_dir / "pki.json")) pki_ = PkiRegistry::load(config_.state_dir / "pki.json");
  if (config_.seed) {
    // Each invocation draws from a fresh stream so reruns never reuse
    // commitment randomness.
    std::uint64_t stream = 0;
    const fs::path sp = config_.state_dir / "rng_stream";
    if (fs::exists(sp)) stream = std::stoull(slurp(sp)) + 1;
    write_text(sp, std::to_string(stream) + "\n");
    rng_ = std::make_unique<DeterministicRandom>(*config_.seed, stream);
  } else {
    rng_ = std::make_unique<SystemRandom>();
  }
  load_keys();
}

Context::~Context() = default;

void Context::load_keys() {
  for (const auto& entry : fs::directory_iterator(config_.state_dir / "keys")) {
    if (entry.path().extension() != ".json") continue;
    const json j = json::parse(slurp(entry.path()));
    const std::string id = j.at("id").get<std::string>();
    const SchemeKind kind = parse_scheme_kind(j.at("kind").get<std::string>());
    auto key = sig_import(j.at("descriptor").get<std::string>(),
                          from_hex(j.at("secret").get<std::string>()));
    if (kind == SchemeKind::kTimestamp) {
      timestamps_.add(std::make_shared<TimestampService>(id, std::move(key), clock_, pki_));
    } else {
      keys_.add(id, std::move(key));
    }
    key_ids_.emplace_back(id, kind);
  }
}

void Context::save_key(const std::string& id, SchemeKind kind, const SigningKey& key) {
  const json j = {{"id", id},
                  {"kind", std::string(scheme_kind_name(kind))},
                  {"descriptor", key.descriptor()},
                  {"secret", to_hex(key.export_secret())}};
  const fs::path p = config_.state_dir / "keys" / (to_hex(to_bytes(id)) + ".json");
  write_text(p, j.dump(2) + "\n");
  fs::permissions(p, fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace);
}

std::shared_ptr<SharingSystem> Context::make_sharing(const std::vector<std::string>& endpoints,
                                                     std::size_t threshold) {
  std::vector<std::shared_ptr<ShareholderApi>> holders;
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    if (is_tcp(endpoints[i])) {
      holders.push_back(std::make_shared<ShareholderProxy>(TcpTransport::from_url(endpoints[i])));
    } else {
      holders.push_back(Shareholder::open(config_.resolve(endpoints[i]),
                                          static_cast<std::uint8_t>(i + 1),
                                          std::make_unique<SystemRandom>()));
    }
  }
  return std::make_shared<SharingSystem>(std::move(holders), threshold, *rng_);
}

Archive& Context::archive() {
  if (!archive_) {
    sharing_ = make_sharing(config_.shareholders, config_.threshold);
    if (is_tcp(config_.evidence_service)) {
      evidence_ = std::make_shared<EvidenceProxy>(TcpTransport::from_url(config_.evidence_service));
    } else {
      const fs::path dir = config_.evidence_service == "local"
                               ? config_.state_dir / "es"
                               : config_.resolve(config_.evidence_service);
      evidence_ = std::make_shared<EvidenceService>(pki_, timestamps_, *rng_, dir);
    }
    archive_ = std::make_unique<Archive>(sharing_, evidence_, pki_, keys_, clock_, *rng_,
                                         ArchiveOptions{config_.sign_commitment});
  }
  return *archive_;
}

void Context::add_scheme(const std::string& id, SchemeKind kind, const std::string& descriptor,
                         Time valid_from, Time t_b, std::uint64_t max_length) {
  require(!pki_.contains(id), Errc::kConfig, "scheme id '" + id + "' already registered");
  switch (kind) {
    case SchemeKind::kSignature: {
      auto key = sig_setup(descriptor, *rng_);
      pki_.add({id, kind, descriptor, key->public_key(), valid_from, t_b});
      save_key(id, kind, *key);
      keys_.add(id, std::move(key));
      break;
    }
    case SchemeKind::kTimestamp: {
      auto service = ts_setup(descriptor, id, pki_, clock_, valid_from, t_b, *rng_);
      save_key(id, kind, service->key());
      timestamps_.add(std::move(service));
      break;
    }
    case SchemeKind::kVectorCommitment:
      vc_register(pki_, vc_setup(descriptor, max_length, *rng_, id), valid_from, t_b);
      break;
    default:
      fail(Errc::kConfig, "schemes of kind " + std::string(scheme_kind_name(kind)) +
                              " are configured implicitly");
  }
  key_ids_.emplace_back(id, kind);
}

void Context::save() {
  write_text(config_.state_dir / "clock", std::to_string(clock_.now()) + "\n");
  pki_.save(config_.state_dir / "pki.json");
  for (const auto& [id, kind] : key_ids_) {
    if (kind == SchemeKind::kTimestamp) {
      save_key(id, kind, timestamps_.get(id).key());
    } else if (kind == SchemeKind::kSignature) {
      save_key(id, kind, keys_.get(id));
    }
  }
}

}  // namespace elsa::cli
