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

#include <memory>

#include "elsa/canonical.hpp"
#include "elsa/evidence_service.hpp"
#include "elsa/shareholder.hpp"
#include "elsa/transport.hpp"

namespace elsa {

// Messages are canonical encodings. Request: Tuple[Str(op), args...].
// Response: Tuple[UInt(0), result] on success, Tuple[UInt(errc), Str(msg)]
// on failure; the error is rethrown on the calling side.
//
// Shareholder ops: INFO, PUT, GET, NAMES, RESHARE_BEGIN, RESHARE_SUBSHARE,
// RESHARE_COMMIT, RESHARE_ABORT, SHUTDOWN, WIPE.
// Evidence ops: ADD_COM, RENEW_TS, ADD_COM_RENEW, GET_EVIDENCE, NAMES,
// STATS, WIPE.

Handler shareholder_handler(std::shared_ptr<ShareholderApi> target);
Handler evidence_handler(std::shared_ptr<EvidenceServiceApi> target);

class ShareholderProxy final : public ShareholderApi {
 public:
  explicit ShareholderProxy(std::shared_ptr<Transport> transport)
      : transport_(std::move(transport)) {}

  ShareholderInfo info() override;
  void put(const std::string& name, const Bytes& y, bool overwrite) override;
  std::optional<Share> get(const std::string& name) override;
  std::vector<std::string> names() override;
  ReshareOutbox reshare_begin(std::size_t n, std::size_t t) override;
  void reshare_subshare(std::uint8_t from, const std::map<std::string, Bytes>& parts) override;
  void reshare_commit() override;
  void reshare_abort() override;
  void shutdown() override;
  void wipe() override;

 private:
  Value call(const char* op, std::vector<Value> args = {});
  std::shared_ptr<Transport> transport_;
};

class EvidenceProxy final : public EvidenceServiceApi {
 public:
  explicit EvidenceProxy(std::shared_ptr<Transport> transport)
      : transport_(std::move(transport)) {}

  void add_com(const std::vector<std::string>& names, const std::string& vc_id,
               const Digest& c, const std::string& ts_id) override;
  bool renew_ts(const std::string& vc_id, const std::string& ts_id) override;
  void add_com_renew(const NamePositions& positions, const std::string& vc_id,
                     const Digest& c, const std::string& ts_id) override;
  EvidenceList get_evidence(const std::string& name) override;
  std::vector<std::string> names() override;
  EvidenceStats stats() override;
  void wipe() override;

 private:
  Value call(const char* op, std::vector<Value> args = {});
  std::shared_ptr<Transport> transport_;
};

}  // namespace elsa
