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

#include "elsa/pki.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

#include "elsa/errors.hpp"

namespace elsa {

using nlohmann::json;

std::string_view scheme_kind_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kSignature: return "signature";
    case SchemeKind::kTimestamp: return "timestamp";
    case SchemeKind::kVectorCommitment: return "vector-commitment";
    case SchemeKind::kHidingCommitment: return "hiding-commitment";
    case SchemeKind::kSharing: return "sharing";
  }
  return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  for (auto k : {SchemeKind::kSignature, SchemeKind::kTimestamp,
                 SchemeKind::kVectorCommitment, SchemeKind::kHidingCommitment,
                 SchemeKind::kSharing}) {
    if (scheme_kind_name(k) == name) return k;
  }
  fail(Errc::kParameter, "unknown scheme kind '" + std::string(name) + "'");
}

PkiRegistry::PkiRegistry(const PkiRegistry& other) {
  std::lock_guard lock(other.mu_);
  instances_ = other.instances_;
}

PkiRegistry& PkiRegistry::operator=(const PkiRegistry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  instances_ = other.instances_;
  return *this;
}

void PkiRegistry::add(SchemeInstance instance) {
  require(!instance.scheme_id.empty(), Errc::kParameter, "empty scheme id");
  require(instance.valid_from < instance.t_b, Errc::kParameter,
          "scheme " + instance.scheme_id + ": valid_from must precede t_b");
  std::lock_guard lock(mu_);
  require(!instances_.contains(instance.scheme_id), Errc::kParameter,
          "duplicate scheme id " + instance.scheme_id);
  std::string id = instance.scheme_id;
  instances_.emplace(std::move(id), std::move(instance));
}

bool PkiRegistry::contains(std::string_view scheme_id) const {
  std::lock_guard lock(mu_);
  return instances_.find(scheme_id) != instances_.end();
}

SchemeInstance PkiRegistry::get(std::string_view scheme_id) const {
  std::lock_guard lock(mu_);
  auto it = instances_.find(scheme_id);
  require(it != instances_.end(), Errc::kUnregisteredScheme, std::string(scheme_id));
  return it->second;
}

std::vector<SchemeInstance> PkiRegistry::all() const {
  std::lock_guard lock(mu_);
  std::vector<SchemeInstance> out;
  for (const auto& [_, v] : instances_) out.push_back(v);
  return out;
}

std::size_t PkiRegistry::size() const {
  std::lock_guard lock(mu_);
  return instances_.size();
}

std::string PkiRegistry::to_json() const {
  json arr = json::array();
  for (const auto& s : all()) {
    arr.push_back({{"scheme_id", s.scheme_id},
                   {"kind", scheme_kind_name(s.kind)},
                   {"descriptor", s.descriptor},
                   {"public_params", to_hex(s.public_params)},
                   {"valid_from", s.valid_from},
                   {"t_b", s.t_b}});
  }
  return arr.dump(2) + "\n";
}

PkiRegistry PkiRegistry::from_json(std::string_view text) {
  PkiRegistry pki;
  try {
    const json arr = json::parse(text);
    require(arr.is_array(), Errc::kConfig, "PKI registry must be a JSON array");
    for (const auto& e : arr) {
      SchemeInstance s;
      s.scheme_id = e.at("scheme_id").get<std::string>();
      s.kind = parse_scheme_kind(e.at("kind").get<std::string>());
      s.descriptor = e.at("descriptor").get<std::string>();
      s.public_params = from_hex(e.at("public_params").get<std::string>());
      s.valid_from = e.at("valid_from").get<Time>();
      s.t_b = e.at("t_b").get<Time>();
      pki.add(std::move(s));
    }
  } catch (const json::exception& ex) {
    fail(Errc::kConfig, std::string("PKI registry: ") + ex.what());
  }
  return pki;
}

void PkiRegistry::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), Errc::kIo, "cannot write " + path.string());
  out << to_json();
}

PkiRegistry PkiRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::kIo, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

bool valid_at(const PkiRegistry& pki, std::string_view scheme_id, Time t) {
  const SchemeInstance s = pki.get(scheme_id);
  return s.valid_from <= t && t < s.t_b;
}

}  // namespace elsa
