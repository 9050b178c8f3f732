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
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elsa/shamir.hpp"

namespace elsa {

struct ShareRecord {
  std::string name;
  std::uint64_t epoch = 0;
  std::uint8_t x = 0;
  Bytes y;

  // {"name", "epoch", "x", "share"} with the share in hex.
  std::string to_json() const;
  static ShareRecord from_json(std::string_view text);
};

// One shareholder's database name -> share. With a directory it persists
// every record as its own file under records/ (files are only ever added or
// removed, never rewritten); without one it lives in memory. bytes() reports
// the same record sizes in both modes.
class ShareStore {
 public:
  ShareStore() = default;
  explicit ShareStore(std::filesystem::path dir);

  void put(const ShareRecord& record);
  std::optional<ShareRecord> get(const std::string& name) const;
  std::vector<std::string> names() const;
  std::size_t size() const { return records_.size(); }
  std::uint64_t bytes() const;
  void clear();

  const std::optional<std::filesystem::path>& dir() const { return dir_; }

 private:
  std::filesystem::path record_path(const ShareRecord& r) const;

  std::optional<std::filesystem::path> dir_;
  std::map<std::string, ShareRecord> records_;
  std::map<std::string, std::uint64_t> sizes_;
};

struct ShareholderInfo {
  std::uint8_t x = 0;
  std::uint64_t epoch = 0;
  std::uint64_t items = 0;
  std::uint64_t bytes = 0;
};

// Sub-shares produced by one shareholder for one resharing round:
// recipient x -> (name -> bytes).
using ReshareOutbox = std::map<std::uint8_t, std::map<std::string, Bytes>>;

// The operations a shareholder offers, locally or over the wire.
class ShareholderApi {
 public:
  virtual ~ShareholderApi() = default;

  // Doubles as a reachability probe: throws Errc::kUnavailable when down.
  virtual ShareholderInfo info() = 0;
  // Stores at the shareholder's current epoch. Throws Errc::kDuplicateName
  // if the name exists and overwrite is false.
  virtual void put(const std::string& name, const Bytes& y, bool overwrite) = 0;
  virtual std::optional<Share> get(const std::string& name) = 0;
  virtual std::vector<std::string> names() = 0;

  // Proactive renewal. begin() draws a zero-constant sharing per stored name
  // and returns the evaluations destined for the other shareholders;
  // subshare() accumulates received evaluations; commit() adds them, bumps
  // the epoch and erases the old shares. A subshare from x = 0 is a
  // replacement share from a central dealer.
  virtual ReshareOutbox reshare_begin(std::size_t n, std::size_t t) = 0;
  virtual void reshare_subshare(std::uint8_t from, const std::map<std::string, Bytes>& parts) = 0;
  virtual void reshare_commit() = 0;
  virtual void reshare_abort() = 0;

  virtual void shutdown() = 0;
  // Drops every record (re-initialization).
  virtual void wipe() = 0;
};

class Shareholder final : public ShareholderApi {
 public:
  Shareholder(std::uint8_t x, ShareStore store, std::unique_ptr<RandomSource> rng);
  // Opens (or creates) a directory-backed shareholder.
  static std::shared_ptr<Shareholder> open(const std::filesystem::path& dir, std::uint8_t x,
                                           std::unique_ptr<RandomSource> rng);

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

  // Fault injection for tests and simulations.
  void set_online(bool online);
  bool is_shut_down() const;
  // Raw access to what this shareholder holds, for leakage checks.
  const ShareStore& store() const { return store_; }

 private:
  void check_up() const;
  void save_meta() const;

  mutable std::mutex mu_;
  std::uint8_t x_;
  std::uint64_t epoch_ = 0;
  ShareStore store_;
  std::unique_ptr<RandomSource> rng_;
  bool online_ = true;
  bool shut_down_ = false;

  struct Pending {
    std::size_t n = 0;
    std::map<std::string, Bytes> delta;
    std::map<std::string, Bytes> replacement;
    std::set<std::uint8_t> contributors;
  };
  std::optional<Pending> pending_;
};

}  // namespace elsa
