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

#include "elsa/sharing_system.hpp"

#include <map>
#include <set>

#include "elsa/errors.hpp"

namespace elsa {

SharingSystem::SharingSystem(std::vector<std::shared_ptr<ShareholderApi>> holders,
                             std::size_t threshold, RandomSource& rng)
    : holders_(std::move(holders)), threshold_(threshold), rng_(rng) {
  require(threshold_ >= 1 && threshold_ <= holders_.size() && holders_.size() <= 255,
          Errc::kThreshold,
          "need 1 <= T <= N <= 255, got T=" + std::to_string(threshold_) +
              " N=" + std::to_string(holders_.size()));
}

void SharingSystem::probe_all() {
  for (auto& h : holders_) h->info();
}

void SharingSystem::init(bool force) {
  std::lock_guard lock(mu_);
  for (auto& h : holders_) {
    const ShareholderInfo info = h->info();
    if (info.items == 0) continue;
    require(force, Errc::kAlreadyInitialized,
            "shareholder " + std::to_string(info.x) + " already holds data");
    h->wipe();
  }
}

void SharingSystem::store(const std::string& name, const Value& data, bool overwrite) {
  store_bytes(name, encode(data), overwrite);
}

void SharingSystem::store_bytes(const std::string& name, ByteView data, bool overwrite) {
  std::lock_guard lock(mu_);
  probe_all();
  const std::vector<Share> shares = share(data, holders_.size(), threshold_, rng_, name);
  for (std::size_t i = 0; i < holders_.size(); ++i) {
    holders_[i]->put(name, shares[i].y, overwrite);
  }
}

Value SharingSystem::retrieve(const std::string& name) { return decode(retrieve_bytes(name)); }

Bytes SharingSystem::retrieve_bytes(const std::string& name) {
  std::lock_guard lock(mu_);
  return retrieve_locked(name);
}

Bytes SharingSystem::retrieve_locked(const std::string& name) {
  std::map<std::uint64_t, std::vector<Share>> by_epoch;
  std::size_t reachable = 0;
  for (auto& h : holders_) {
    std::optional<Share> s;
    try {
      s = h->get(name);
    } catch (const Error& e) {
      if (e.code() != Errc::kUnavailable && e.code() != Errc::kTransport) throw;
      continue;
    }
    ++reachable;
    if (s) by_epoch[s->epoch].push_back(std::move(*s));
  }
  require(reachable >= threshold_, Errc::kUnavailable,
          "only " + std::to_string(reachable) + " shareholders reachable, need " +
              std::to_string(threshold_));
  require(!by_epoch.empty(), Errc::kNotFound, "no item named '" + name + "'");
  // Only shares of a single epoch may be combined; prefer the newest.
  for (auto it = by_epoch.rbegin(); it != by_epoch.rend(); ++it) {
    if (it->second.size() >= threshold_) return reconstruct(it->second, threshold_);
  }
  fail(Errc::kUnavailable, "fewer than T shares of one epoch for '" + name + "'");
}

std::vector<std::string> SharingSystem::names() {
  std::lock_guard lock(mu_);
  return names_locked();
}

std::vector<std::string> SharingSystem::names_locked() {
  std::set<std::string> all;
  for (auto& h : holders_) {
    try {
      for (auto& n : h->names()) all.insert(std::move(n));
    } catch (const Error& e) {
      if (e.code() != Errc::kUnavailable && e.code() != Errc::kTransport) throw;
    }
  }
  return {all.begin(), all.end()};
}

void SharingSystem::reshare() {
  std::lock_guard lock(mu_);
  probe_all();
  const std::size_t n = holders_.size();
  auto abort_all = [&] {
    for (auto& h : holders_) {
      try {
        h->reshare_abort();
      } catch (const Error&) {
      }
    }
  };
  try {
    std::vector<ReshareOutbox> outboxes;
    outboxes.reserve(n);
    for (auto& h : holders_) outboxes.push_back(h->reshare_begin(n, threshold_));
    for (std::size_t from = 0; from < n; ++from) {
      for (auto& [to, parts] : outboxes[from]) {
        require(to >= 1 && to <= n, Errc::kParameter, "subshare for unknown shareholder");
        holders_[to - 1]->reshare_subshare(static_cast<std::uint8_t>(from + 1), parts);
      }
    }
  } catch (...) {
    abort_all();
    throw;
  }
  for (auto& h : holders_) h->reshare_commit();
}

void SharingSystem::reshare_central() {
  std::lock_guard lock(mu_);
  probe_all();
  const std::size_t n = holders_.size();
  std::vector<std::map<std::string, Bytes>> fresh(n);
  for (const auto& name : names_locked()) {
    const Bytes secret = retrieve_locked(name);
    std::vector<Share> shares = share(secret, n, threshold_, rng_, name);
    for (std::size_t i = 0; i < n; ++i) fresh[i][name] = std::move(shares[i].y);
  }
  try {
    for (std::size_t i = 0; i < n; ++i) holders_[i]->reshare_subshare(0, fresh[i]);
  } catch (...) {
    for (auto& h : holders_) {
      try {
        h->reshare_abort();
      } catch (const Error&) {
      }
    }
    throw;
  }
  for (auto& h : holders_) h->reshare_commit();
}

void SharingSystem::migrate_to(SharingSystem& target) {
  std::lock_guard lock(mu_);
  probe_all();
  target.probe_all();
  std::vector<std::pair<std::string, Bytes>> items;
  for (const auto& name : names_locked()) items.emplace_back(name, retrieve_locked(name));
  for (const auto& [name, data] : items) target.store_bytes(name, data, true);
  for (auto& h : holders_) h->shutdown();
}

void SharingSystem::shutdown() {
  std::lock_guard lock(mu_);
  for (auto& h : holders_) h->shutdown();
}

std::vector<std::uint64_t> SharingSystem::bytes_per_shareholder() {
  std::lock_guard lock(mu_);
  std::vector<std::uint64_t> out;
  for (auto& h : holders_) out.push_back(h->info().bytes);
  return out;
}

}  // namespace elsa
