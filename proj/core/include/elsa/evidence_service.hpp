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
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "elsa/evidence.hpp"
#include "elsa/pki.hpp"
#include "elsa/timestamp.hpp"

namespace elsa {

struct EvidenceStats {
  std::uint64_t names = 0;
  std::uint64_t lists = 0;
  std::uint64_t renew_lists = 0;
  std::uint64_t tokens = 0;
  // Commitment and timestamp bytes: the encoded size of every list entry.
  std::uint64_t list_bytes = 0;
  std::uint64_t index_bytes = 0;
};

using NamePositions = std::vector<std::pair<std::string, std::uint64_t>>;

// Operations of the evidence service, locally or over the wire. It only
// ever sees names, scheme ids, commitments and positions.
class EvidenceServiceApi {
 public:
  virtual ~EvidenceServiceApi() = default;

  // New batch: names[i] is committed at position i of c. Throws
  // Errc::kDuplicateName if any name is already present.
  virtual void add_com(const std::vector<std::string>& names, const std::string& vc_id,
                       const Digest& c, const std::string& ts_id) = 0;
  // One commitment over all renew lists and one timestamp. Returns false
  // (and does nothing) when there is nothing to renew.
  virtual bool renew_ts(const std::string& vc_id, const std::string& ts_id) = 0;
  // Commitment renewal: positions must name every stored item exactly once.
  virtual void add_com_renew(const NamePositions& positions, const std::string& vc_id,
                             const Digest& c, const std::string& ts_id) = 0;
  // Copy of the name's chain with com positions filled in and no openings.
  virtual EvidenceList get_evidence(const std::string& name) = 0;
  virtual std::vector<std::string> names() = 0;
  virtual EvidenceStats stats() = 0;
  virtual void wipe() = 0;
};

class EvidenceService final : public EvidenceServiceApi {
 public:
  // With a directory, state lives under lists/<id> (appended entry
  // encodings) and an index file rewritten atomically.
  EvidenceService(const PkiRegistry& pki, TimestampDirectory& timestamps, RandomSource& rng,
                  std::optional<std::filesystem::path> dir = std::nullopt);

  void add_com(const std::vector<std::string>& names, const std::string& vc_id,
               const Digest& c, const std::string& ts_id) override;
  bool renew_ts(const std::string& vc_id, const std::string& ts_id) override;
  void add_com_renew(const NamePositions& positions, const std::string& vc_id,
                     const Digest& c, const std::string& ts_id) override;
  EvidenceList get_evidence(const std::string& name) override;
  std::vector<std::string> names() override;
  EvidenceStats stats() override;
  void wipe() override;

  // List ids aliased by a name, in chain order.
  std::vector<std::uint64_t> lists_of(const std::string& name) const;

 private:
  struct Segment {
    std::uint64_t list = 0;
    std::uint64_t position = 0;
  };

  std::uint64_t new_list(const EvidenceEntry& first);
  void append(std::uint64_t list, const EvidenceEntry& entry);
  std::string index_json() const;
  void save_index();
  void load();

  const PkiRegistry& pki_;
  TimestampDirectory& timestamps_;
  RandomSource& rng_;
  std::optional<std::filesystem::path> dir_;

  mutable std::shared_mutex mu_;
  std::map<std::uint64_t, EvidenceList> lists_;
  std::map<std::string, std::vector<Segment>> index_;
  std::vector<std::uint64_t> renew_lists_;
  std::uint64_t next_list_ = 0;
  std::uint64_t tokens_ = 0;
  std::uint64_t list_bytes_ = 0;
};

}  // namespace elsa
