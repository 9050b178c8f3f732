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

#include "elsa/shareholder.hpp"

#include <fstream>
#include <sstream>

#include "elsa/errors.hpp"
#include "elsa/hash.hpp"
#include "json.hpp"

namespace elsa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(in.good(), Errc::kIo, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), Errc::kIo, "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, p);
}

}  // namespace

std::string ShareRecord::to_json() const {
  return json{{"name", name}, {"epoch", epoch}, {"x", x}, {"share", to_hex(y)}}.dump() + "\n";
}

ShareRecord ShareRecord::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    return ShareRecord{j.at("name").get<std::string>(), j.at("epoch").get<std::uint64_t>(),
                       j.at("x").get<std::uint8_t>(), from_hex(j.at("share").get<std::string>())};
  } catch (const json::exception& e) {
    fail(Errc::kDecode, std::string("share record: ") + e.what());
  }
}

ShareStore::ShareStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(*dir_ / "records");
  for (const auto& entry : fs::directory_iterator(*dir_ / "records")) {
    if (entry.path().extension() != ".rec") continue;
    const std::string text = read_file(entry.path());
    ShareRecord r = ShareRecord::from_json(text);
    auto it = records_.find(r.name);
    // A crash between writing a new epoch and erasing the old one leaves
    // both; the newer epoch wins.
    if (it != records_.end()) {
      if (it->second.epoch >= r.epoch) {
        fs::remove(entry.path());
        continue;
      }
      fs::remove(record_path(it->second));
    }
    sizes_[r.name] = text.size();
    records_[r.name] = std::move(r);
  }
}

fs::path ShareStore::record_path(const ShareRecord& r) const {
  const Bytes h = sha256(to_bytes(r.name));
  return *dir_ / "records" /
         (to_hex(ByteView(h).first(16)) + "-" + std::to_string(r.epoch) + ".rec");
}

void ShareStore::put(const ShareRecord& record) {
  const std::string text = record.to_json();
  auto old = records_.find(record.name);
  if (dir_) {
    write_file(record_path(record), text);
    if (old != records_.end() && record_path(old->second) != record_path(record)) {
      fs::remove(record_path(old->second));
    }
  }
  sizes_[record.name] = text.size();
  records_[record.name] = record;
}

std::optional<ShareRecord> ShareStore::get(const std::string& name) const {
  auto it = records_.find(name);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ShareStore::names() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& [name, _] : records_) out.push_back(name);
  return out;
}

std::uint64_t ShareStore::bytes() const {
  std::uint64_t total = 0;
  for (const auto& [_, n] : sizes_) total += n;
  return total;
}

void ShareStore::clear() {
  if (dir_) {
    for (const auto& [_, r] : records_) fs::remove(record_path(r));
  }
  records_.clear();
  sizes_.clear();
}

Shareholder::Shareholder(std::uint8_t x, ShareStore store, std::unique_ptr<RandomSource> rng)
    : x_(x), store_(std::move(store)), rng_(std::move(rng)) {
  require(x_ != 0, Errc::kParameter, "shareholder index must be >= 1");
  if (store_.dir()) {
    const fs::path meta = *store_.dir() / "shareholder.json";
    if (fs::exists(meta)) {
      const json j = json::parse(read_file(meta));
      require(j.at("x").get<int>() == x_, Errc::kConfig,
              "shareholder directory belongs to x=" + std::to_string(j.at("x").get<int>()));
      epoch_ = j.at("epoch").get<std::uint64_t>();
      shut_down_ = j.at("shut_down").get<bool>();
    } else {
      save_meta();
    }
  }
}

std::shared_ptr<Shareholder> Shareholder::open(const fs::path& dir, std::uint8_t x,
                                               std::unique_ptr<RandomSource> rng) {
  return std::make_shared<Shareholder>(x, ShareStore(dir), std::move(rng));
}

void Shareholder::save_meta() const {
  if (!store_.dir()) return;
  write_file(*store_.dir() / "shareholder.json",
             json{{"x", x_}, {"epoch", epoch_}, {"shut_down", shut_down_}}.dump() + "\n");
}

void Shareholder::check_up() const {
  require(online_, Errc::kUnavailable, "shareholder " + std::to_string(x_) + " unreachable");
  require(!shut_down_, Errc::kUnavailable, "shareholder " + std::to_string(x_) + " shut down");
}

ShareholderInfo Shareholder::info() {
  std::lock_guard lock(mu_);
  check_up();
  return {x_, epoch_, store_.size(), store_.bytes()};
}

void Shareholder::put(const std::string& name, const Bytes& y, bool overwrite) {
  std::lock_guard lock(mu_);
  check_up();
  require(overwrite || !store_.get(name), Errc::kDuplicateName, "share for '" + name + "' exists");
  store_.put(ShareRecord{name, epoch_, x_, y});
}

std::optional<Share> Shareholder::get(const std::string& name) {
  std::lock_guard lock(mu_);
  check_up();
  auto r = store_.get(name);
  if (!r) return std::nullopt;
  return Share{r->x, r->y, r->name, r->epoch};
}

std::vector<std::string> Shareholder::names() {
  std::lock_guard lock(mu_);
  check_up();
  return store_.names();
}

ReshareOutbox Shareholder::reshare_begin(std::size_t n, std::size_t t) {
  std::lock_guard lock(mu_);
  check_up();
  require(x_ <= n, Errc::kParameter, "shareholder index beyond N");
  Pending p;
  p.n = n;
  ReshareOutbox out;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i != x_) out[static_cast<std::uint8_t>(i)];
  }
  for (const auto& name : store_.names()) {
    const std::size_t len = store_.get(name)->y.size();
    std::vector<Bytes> evals = zero_sharing(len, n, t, *rng_);
    for (std::size_t i = 0; i < n; ++i) {
      const auto to = static_cast<std::uint8_t>(i + 1);
      if (to == x_) {
        p.delta[name] = std::move(evals[i]);
      } else {
        out[to][name] = std::move(evals[i]);
      }
    }
  }
  p.contributors.insert(x_);
  pending_ = std::move(p);
  return out;
}

void Shareholder::reshare_subshare(std::uint8_t from, const std::map<std::string, Bytes>& parts) {
  std::lock_guard lock(mu_);
  check_up();
  if (from == 0) {
    // Central dealer: fresh shares replace the current ones wholesale.
    if (!pending_) pending_ = Pending{};
    pending_->replacement = parts;
    pending_->contributors.insert(0);
    return;
  }
  require(pending_.has_value(), Errc::kParameter, "subshare outside a resharing round");
  for (const auto& [name, bytes] : parts) {
    auto& acc = pending_->delta[name];
    if (acc.empty()) acc.assign(bytes.size(), 0);
    require(acc.size() == bytes.size(), Errc::kParameter, "subshare length mismatch");
    for (std::size_t i = 0; i < bytes.size(); ++i) acc[i] ^= bytes[i];
  }
  pending_->contributors.insert(from);
}

void Shareholder::reshare_commit() {
  std::lock_guard lock(mu_);
  check_up();
  require(pending_.has_value(), Errc::kParameter, "commit outside a resharing round");
  const Pending p = std::move(*pending_);
  pending_.reset();
  const bool central = p.contributors.contains(0);
  if (!central) {
    require(p.contributors.size() == p.n, Errc::kUnavailable,
            "resharing round incomplete at shareholder " + std::to_string(x_));
  }
  const std::uint64_t next = epoch_ + 1;
  for (const auto& name : store_.names()) {
    ShareRecord r = *store_.get(name);
    if (central) {
      auto it = p.replacement.find(name);
      require(it != p.replacement.end(), Errc::kParameter, "no replacement share for " + name);
      r.y = it->second;
    } else {
      auto it = p.delta.find(name);
      require(it != p.delta.end() && it->second.size() == r.y.size(), Errc::kParameter,
              "missing subshares for " + name);
      for (std::size_t i = 0; i < r.y.size(); ++i) r.y[i] ^= it->second[i];
    }
    r.epoch = next;
    store_.put(r);
  }
  epoch_ = next;
  save_meta();
}

void Shareholder::reshare_abort() {
  std::lock_guard lock(mu_);
  pending_.reset();
}

void Shareholder::shutdown() {
  std::lock_guard lock(mu_);
  check_up();
  store_.clear();
  shut_down_ = true;
  save_meta();
}

void Shareholder::wipe() {
  std::lock_guard lock(mu_);
  require(online_, Errc::kUnavailable, "shareholder " + std::to_string(x_) + " unreachable");
  store_.clear();
  pending_.reset();
  epoch_ = 0;
  shut_down_ = false;
  save_meta();
}

void Shareholder::set_online(bool online) {
  std::lock_guard lock(mu_);
  online_ = online;
}

bool Shareholder::is_shut_down() const {
  std::lock_guard lock(mu_);
  return shut_down_;
}

}  // namespace elsa
