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
#include <mutex>
#include <string>
#include <vector>

#include "elsa/canonical.hpp"
#include "elsa/shareholder.hpp"

namespace elsa {

// Data-owner side of the sharing layer: stores and retrieves named values
// across N shareholders with threshold T. Writes need every shareholder,
// reads any T of them. Byte-wise sharing has no message-size limit, so no
// chunking is needed.
class SharingSystem {
 public:
  SharingSystem(std::vector<std::shared_ptr<ShareholderApi>> holders, std::size_t threshold,
                RandomSource& rng);

  SharingPolicy policy() const { return {holders_.size(), threshold_}; }
  const std::vector<std::shared_ptr<ShareholderApi>>& holders() const { return holders_; }

  // Probes every shareholder. Refuses non-empty stores unless force, in
  // which case they are wiped.
  void init(bool force);

  void store(const std::string& name, const Value& data, bool overwrite = false);
  void store_bytes(const std::string& name, ByteView data, bool overwrite = false);
  Value retrieve(const std::string& name);
  Bytes retrieve_bytes(const std::string& name);

  // Union of names known to the reachable shareholders.
  std::vector<std::string> names();

  // Distributed proactive renewal. Aborts without an epoch change unless
  // every shareholder is reachable.
  void reshare();
  // Renewal by the data owner: reconstruct every item and deal fresh shares.
  void reshare_central();

  // Moves every stored item to `target`, then shuts this set down. Any
  // failure before the shutdown leaves this set untouched.
  void migrate_to(SharingSystem& target);
  void shutdown();

  std::vector<std::uint64_t> bytes_per_shareholder();

 private:
  void probe_all();
  std::vector<std::string> names_locked();
  Bytes retrieve_locked(const std::string& name);

  std::vector<std::shared_ptr<ShareholderApi>> holders_;
  std::size_t threshold_;
  RandomSource& rng_;
  std::recursive_mutex mu_;
};

}  // namespace elsa
