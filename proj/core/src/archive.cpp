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

#include "elsa/archive.hpp"

#include <set>

#include "elsa/errors.hpp"

namespace elsa {

void KeyRing::add(std::string scheme_id, std::unique_ptr<SigningKey> key) {
  std::lock_guard lock(mu_);
  keys_[std::move(scheme_id)] = std::move(key);
}

SigningKey& KeyRing::get(std::string_view scheme_id) {
  std::lock_guard lock(mu_);
  auto it = keys_.find(scheme_id);
  require(it != keys_.end(), Errc::kUnregisteredScheme,
          "no signing key for " + std::string(scheme_id));
  return *it->second;
}

bool KeyRing::contains(std::string_view scheme_id) const {
  std::lock_guard lock(mu_);
  return keys_.find(scheme_id) != keys_.end();
}

std::string data_item(const std::string& name) { return "data/" + name; }

std::string decom_item(const std::string& name, std::uint64_t entry_index) {
  return "decom/" + name + "/" + std::to_string(entry_index);
}

Value commitment_sign_message(const std::string& vc_id, const Digest& c) {
  return Value::tuple({Value::str("commitment"), Value::str(vc_id), Value::bytes(c)});
}

Archive::Archive(std::shared_ptr<SharingSystem> sharing,
                 std::shared_ptr<EvidenceServiceApi> evidence, const PkiRegistry& pki,
                 KeyRing& keys, const LogicalClock& clock, RandomSource& rng,
                 ArchiveOptions options)
    : sharing_(std::move(sharing)),
      evidence_(std::move(evidence)),
      pki_(pki),
      keys_(keys),
      clock_(clock),
      rng_(rng),
      options_(options) {}

void Archive::require_valid_now(const std::string& id, SchemeKind kind) const {
  const SchemeInstance inst = pki_.get(id);
  require(inst.kind == kind, Errc::kParameter,
          id + " is not a " + std::string(scheme_kind_name(kind)) + " scheme");
  const Time now = clock_.now();
  require(inst.valid_from <= now && now < inst.t_b, Errc::kSchemeExpired,
          id + " is not valid at t=" + std::to_string(now));
}

void Archive::init(bool force) {
  std::unique_lock lock(mu_);
  require(force || evidence_->names().empty(), Errc::kAlreadyInitialized,
          "evidence service already holds data");
  sharing_->init(force);
  if (force) evidence_->wipe();
}

void Archive::store(const std::vector<FileRecord>& files, const std::string& sig_id,
                    const std::string& vc_id, const std::string& ts_id) {
  std::unique_lock lock(mu_);
  require(!files.empty(), Errc::kLength, "empty batch");
  require_valid_now(sig_id, SchemeKind::kSignature);
  require_valid_now(vc_id, SchemeKind::kVectorCommitment);
  const VcParams params = vc_params_from_pki(pki_, vc_id);
  require(files.size() <= params.max_length, Errc::kLength,
          "batch of " + std::to_string(files.size()) + " exceeds vector length " +
              std::to_string(params.max_length));
  const auto existing = evidence_->names();
  std::set<std::string> taken(existing.begin(), existing.end());
  for (const auto& f : files) {
    require(taken.insert(f.name).second, Errc::kDuplicateName,
            "name '" + f.name + "' already stored");
  }
  SigningKey& key = keys_.get(sig_id);

  std::vector<Value> s_values;
  std::vector<Value> messages;
  for (const auto& f : files) {
    Value s = options_.sign_commitment ? Value::bottom() : Value::bytes(key.sign(Value::bytes(f.dat)));
    messages.push_back(Value::tuple({Value::bytes(f.dat), Value::str(sig_id), s}));
    s_values.push_back(std::move(s));
  }
  auto [c, decom] = vc_commit(params, messages, rng_);
  if (options_.sign_commitment) {
    const Bytes sig = key.sign(commitment_sign_message(vc_id, c.c));
    for (auto& s : s_values) s = Value::tuple({Value::bytes(sig)});
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& f = files[i];
    sharing_->store(data_item(f.name),
                    Value::tuple({Value::bytes(f.dat), Value::str(sig_id), s_values[i]}), true);
    sharing_->store(decom_item(f.name, 0), vc_open(params, decom, i).to_value(), true);
    names.push_back(f.name);
  }
  evidence_->add_com(names, vc_id, c.c, ts_id);
}

bool Archive::renew_ts(const std::string& vc_id, const std::string& ts_id) {
  std::unique_lock lock(mu_);
  require_valid_now(vc_id, SchemeKind::kVectorCommitment);
  return evidence_->renew_ts(vc_id, ts_id);
}

void Archive::renew_com(const std::string& vc_id, const std::string& ts_id) {
  std::unique_lock lock(mu_);
  require_valid_now(vc_id, SchemeKind::kVectorCommitment);
  const VcParams params = vc_params_from_pki(pki_, vc_id);
  const std::vector<std::string> names = evidence_->names();
  require(!names.empty(), Errc::kNotFound, "nothing stored");
  require(names.size() <= params.max_length, Errc::kLength,
          std::to_string(names.size()) + " items exceed vector length " +
              std::to_string(params.max_length));

  std::vector<Value> messages;
  std::vector<std::uint64_t> next_index;
  for (const auto& name : names) {
    const RetrievedFile rf = retrieve_locked(name);
    std::vector<Value> chain;
    for (const auto& e : rf.evidence.entries) chain.push_back(e.to_value());
    messages.push_back(Value::tuple({Value::bytes(rf.dat), Value::str(rf.evidence.sig_id),
                                     rf.evidence.s, Value::tuple(std::move(chain))}));
    next_index.push_back(rf.evidence.entries.size());
  }
  auto [c, decom] = vc_commit(params, messages, rng_);
  NamePositions positions;
  for (std::size_t i = 0; i < names.size(); ++i) {
    sharing_->store(decom_item(names[i], next_index[i]), vc_open(params, decom, i).to_value(),
                    true);
    positions.emplace_back(names[i], i);
  }
  evidence_->add_com_renew(positions, vc_id, c.c, ts_id);
}

void Archive::renew_shares(bool central) {
  std::unique_lock lock(mu_);
  if (central) {
    sharing_->reshare_central();
  } else {
    sharing_->reshare();
  }
}

void Archive::renew_sharing(std::shared_ptr<SharingSystem> target) {
  std::unique_lock lock(mu_);
  target->init(false);
  sharing_->migrate_to(*target);
  sharing_ = std::move(target);
}

RetrievedFile Archive::retrieve(const std::string& name) {
  std::shared_lock lock(mu_);
  return retrieve_locked(name);
}

RetrievedFile Archive::retrieve_locked(const std::string& name) {
  EvidenceList entries = evidence_->get_evidence(name);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].com) {
      entries[i].com->d = Opening::from_value(sharing_->retrieve(decom_item(name, i)));
    }
  }
  const Value triple = sharing_->retrieve(data_item(name));
  const auto& f = triple.expect_tuple(3);
  return RetrievedFile{f[0].as_bytes(), EvidenceBundle{f[1].as_string(), f[2], std::move(entries)}};
}

std::vector<std::string> Archive::names() {
  std::shared_lock lock(mu_);
  return evidence_->names();
}

}  // namespace elsa
