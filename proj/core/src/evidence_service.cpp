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

#include "elsa/evidence_service.hpp"

#include <fstream>
#include <iterator>
#include <mutex>
#include <set>

#include "elsa/errors.hpp"
#include "json.hpp"

namespace elsa {

namespace fs = std::filesystem;
using nlohmann::json;

EvidenceService::EvidenceService(const PkiRegistry& pki, TimestampDirectory& timestamps,
                                 RandomSource& rng, std::optional<fs::path> dir)
    : pki_(pki), timestamps_(timestamps), rng_(rng), dir_(std::move(dir)) {
  if (dir_) {
    fs::create_directories(*dir_ / "lists");
    load();
  }
}

void EvidenceService::load() {
  const fs::path index_path = *dir_ / "index";
  if (!fs::exists(index_path)) return;
  std::ifstream in(index_path);
  const json j = json::parse(in);
  next_list_ = j.at("next_list_id").get<std::uint64_t>();
  tokens_ = j.at("tokens").get<std::uint64_t>();
  renew_lists_ = j.at("renew_lists").get<std::vector<std::uint64_t>>();
  for (const auto& [name, segs] : j.at("names").items()) {
    auto& out = index_[name];
    for (const auto& s : segs) out.push_back({s.at(0).get<std::uint64_t>(), s.at(1).get<std::uint64_t>()});
  }
  for (std::uint64_t id = 0; id < next_list_; ++id) {
    std::ifstream lf(*dir_ / "lists" / std::to_string(id), std::ios::binary);
    require(lf.good(), Errc::kIo, "missing evidence list " + std::to_string(id));
    const Bytes raw((std::istreambuf_iterator<char>(lf)), std::istreambuf_iterator<char>());
    EvidenceList& list = lists_[id];
    std::size_t off = 0;
    while (off < raw.size()) {
      require(raw.size() - off >= 5, Errc::kDecode, "truncated evidence list");
      const std::size_t len = 5 + get_be32(raw.data() + off + 1);
      require(raw.size() - off >= len, Errc::kDecode, "truncated evidence list");
      list.push_back(EvidenceEntry::from_chain_value(decode(ByteView(raw).subspan(off, len))));
      off += len;
    }
    list_bytes_ += raw.size();
  }
}

std::string EvidenceService::index_json() const {
  json names = json::object();
  for (const auto& [name, segs] : index_) {
    json arr = json::array();
    for (const auto& s : segs) arr.push_back({s.list, s.position});
    names[name] = std::move(arr);
  }
  return json{{"next_list_id", next_list_},
              {"tokens", tokens_},
              {"renew_lists", renew_lists_},
              {"names", std::move(names)}}
             .dump() +
         "\n";
}

void EvidenceService::save_index() {
  if (!dir_) return;
  const fs::path tmp = *dir_ / "index.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    require(out.good(), Errc::kIo, "cannot write evidence index");
    out << index_json();
  }
  fs::rename(tmp, *dir_ / "index");
}

void EvidenceService::append(std::uint64_t list, const EvidenceEntry& entry) {
  const Bytes enc = encode(entry.chain_value());
  if (dir_) {
    std::ofstream out(*dir_ / "lists" / std::to_string(list), std::ios::binary | std::ios::app);
    require(out.good(), Errc::kIo, "cannot append to evidence list");
    out.write(reinterpret_cast<const char*>(enc.data()), static_cast<std::streamsize>(enc.size()));
  }
  lists_[list].push_back(entry);
  list_bytes_ += enc.size();
}

std::uint64_t EvidenceService::new_list(const EvidenceEntry& first) {
  const std::uint64_t id = next_list_++;
  lists_[id];
  append(id, first);
  return id;
}

void EvidenceService::add_com(const std::vector<std::string>& names, const std::string& vc_id,
                              const Digest& c, const std::string& ts_id) {
  std::unique_lock lock(mu_);
  require(!names.empty(), Errc::kLength, "empty batch");
  std::set<std::string> seen;
  for (const auto& n : names) {
    require(!index_.contains(n) && seen.insert(n).second, Errc::kDuplicateName,
            "name '" + n + "' already present");
  }
  EvidenceEntry e;
  e.com = ComPart{vc_id, c, 0, std::nullopt};
  e.ts = timestamps_.get(ts_id).stamp(stamped_commitment(vc_id, c));
  ++tokens_;
  const std::uint64_t id = new_list(e);
  for (std::size_t i = 0; i < names.size(); ++i) index_[names[i]].push_back({id, i});
  renew_lists_.push_back(id);
  save_index();
}

bool EvidenceService::renew_ts(const std::string& vc_id, const std::string& ts_id) {
  std::unique_lock lock(mu_);
  if (renew_lists_.empty()) return false;
  const VcParams params = vc_params_from_pki(pki_, vc_id);
  std::vector<Value> vector;
  vector.reserve(renew_lists_.size());
  for (const auto id : renew_lists_) vector.push_back(chain_value(lists_.at(id)));
  auto [c, decom] = vc_commit(params, vector, rng_);
  const TimestampToken token = timestamps_.get(ts_id).stamp(stamped_commitment(vc_id, c.c));
  ++tokens_;
  for (std::size_t i = 0; i < renew_lists_.size(); ++i) {
    EvidenceEntry e;
    e.renew = RenewPart{vc_id, c.c, i, vc_open(params, decom, i)};
    e.ts = token;
    append(renew_lists_[i], e);
  }
  save_index();
  return true;
}

void EvidenceService::add_com_renew(const NamePositions& positions, const std::string& vc_id,
                                    const Digest& c, const std::string& ts_id) {
  std::unique_lock lock(mu_);
  require(!index_.empty(), Errc::kNotFound, "nothing stored");
  std::set<std::string> seen;
  for (const auto& [name, _] : positions) {
    require(index_.contains(name), Errc::kNotFound, "unknown name '" + name + "'");
    require(seen.insert(name).second, Errc::kDuplicateName, "name '" + name + "' repeated");
  }
  require(seen.size() == index_.size(), Errc::kParameter, "position map misses stored names");
  EvidenceEntry e;
  e.com = ComPart{vc_id, c, 0, std::nullopt};
  e.ts = timestamps_.get(ts_id).stamp(stamped_commitment(vc_id, c));
  ++tokens_;
  const std::uint64_t id = new_list(e);
  for (const auto& [name, pos] : positions) index_[name].push_back({id, pos});
  renew_lists_ = {id};
  save_index();
}

EvidenceList EvidenceService::get_evidence(const std::string& name) {
  std::shared_lock lock(mu_);
  auto it = index_.find(name);
  require(it != index_.end(), Errc::kNotFound, "no evidence for '" + name + "'");
  EvidenceList out;
  for (const auto& seg : it->second) {
    const EvidenceList& list = lists_.at(seg.list);
    const std::size_t first = out.size();
    out.insert(out.end(), list.begin(), list.end());
    out[first].com->position = seg.position;
  }
  return out;
}

std::vector<std::string> EvidenceService::names() {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [name, _] : index_) out.push_back(name);
  return out;
}

std::vector<std::uint64_t> EvidenceService::lists_of(const std::string& name) const {
  std::shared_lock lock(mu_);
  std::vector<std::uint64_t> out;
  auto it = index_.find(name);
  if (it != index_.end()) {
    for (const auto& s : it->second) out.push_back(s.list);
  }
  return out;
}

EvidenceStats EvidenceService::stats() {
  std::shared_lock lock(mu_);
  return {index_.size(), lists_.size(), renew_lists_.size(),
          tokens_,       list_bytes_,   index_json().size()};
}

void EvidenceService::wipe() {
  std::unique_lock lock(mu_);
  if (dir_) {
    for (const auto& [id, _] : lists_) fs::remove(*dir_ / "lists" / std::to_string(id));
  }
  lists_.clear();
  index_.clear();
  renew_lists_.clear();
  next_list_ = 0;
  tokens_ = 0;
  list_bytes_ = 0;
  save_index();
}

}  // namespace elsa
