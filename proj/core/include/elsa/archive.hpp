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

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "elsa/clock.hpp"
#include "elsa/evidence_service.hpp"
#include "elsa/sharing_system.hpp"
#include "elsa/signature.hpp"

namespace elsa {

struct FileRecord {
  std::string name;
  Bytes dat;
};

// What the verifier needs besides the data: the certificate (the signature
// scheme id), the signature value and the evidence chain with openings.
// s is Bytes(sig) for per-file signatures, or Tuple[Bytes(sig)] when the
// signature covers the first commitment instead.
struct EvidenceBundle {
  std::string sig_id;
  Value s;
  EvidenceList entries;
  friend bool operator==(const EvidenceBundle&, const EvidenceBundle&) = default;
};

struct RetrievedFile {
  Bytes dat;
  EvidenceBundle evidence;
};

// Signing keys held by the data owner.
class KeyRing {
 public:
  void add(std::string scheme_id, std::unique_ptr<SigningKey> key);
  // Throws Errc::kUnregisteredScheme.
  SigningKey& get(std::string_view scheme_id);
  bool contains(std::string_view scheme_id) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<SigningKey>, std::less<>> keys_;
};

struct ArchiveOptions {
  // Sign Tuple["commitment", vc_id, c] once per batch item instead of the
  // data itself.
  bool sign_commitment = false;
};

// Share-store item names.
std::string data_item(const std::string& name);
std::string decom_item(const std::string& name, std::uint64_t entry_index);

// Message signed in commitment-signing mode.
Value commitment_sign_message(const std::string& vc_id, const Digest& c);

// The data owner's view of the whole system.
class Archive {
 public:
  Archive(std::shared_ptr<SharingSystem> sharing, std::shared_ptr<EvidenceServiceApi> evidence,
          const PkiRegistry& pki, KeyRing& keys, const LogicalClock& clock, RandomSource& rng,
          ArchiveOptions options = {});

  // Empties shareholders and evidence service; refuses non-empty state
  // unless force.
  void init(bool force);

  // One vector commitment and one timestamp for the whole batch.
  void store(const std::vector<FileRecord>& files, const std::string& sig_id,
             const std::string& vc_id, const std::string& ts_id);
  // Returns false when nothing is stored.
  bool renew_ts(const std::string& vc_id, const std::string& ts_id);
  // Recommits data and evidence of every item under vc_id. Openings are
  // written before the evidence service is touched, so a failure leaves
  // the evidence unchanged.
  void renew_com(const std::string& vc_id, const std::string& ts_id);
  void renew_shares(bool central = false);
  // Moves every item to a new shareholder set and retires the old one.
  void renew_sharing(std::shared_ptr<SharingSystem> target);

  RetrievedFile retrieve(const std::string& name);
  std::vector<std::string> names();

  SharingSystem& sharing() { return *sharing_; }
  EvidenceServiceApi& evidence() { return *evidence_; }

 private:
  RetrievedFile retrieve_locked(const std::string& name);
  void require_valid_now(const std::string& id, SchemeKind kind) const;

  std::shared_ptr<SharingSystem> sharing_;
  std::shared_ptr<EvidenceServiceApi> evidence_;
  const PkiRegistry& pki_;
  KeyRing& keys_;
  const LogicalClock& clock_;
  RandomSource& rng_;
  ArchiveOptions options_;
  std::shared_mutex mu_;
};

}  // namespace elsa
