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
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "elsa/bytes.hpp"
#include "elsa/clock.hpp"

namespace elsa {

enum class SchemeKind { kSignature, kTimestamp, kVectorCommitment, kHidingCommitment, kSharing };

std::string_view scheme_kind_name(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view name);

// A registered scheme instance. The instance is usable on [valid_from, t_b);
// from its breakage time t_b on it is treated as compromised.
struct SchemeInstance {
  std::string scheme_id;
  SchemeKind kind = SchemeKind::kSignature;
  std::string descriptor;
  Bytes public_params;
  Time valid_from = 0;
  Time t_b = 0;
};

// Trust anchor for verification: scheme id -> instance. Persists as a JSON
// array of {scheme_id, kind, descriptor, public_params (hex), valid_from, t_b}.
class PkiRegistry {
 public:
  PkiRegistry() = default;
  PkiRegistry(const PkiRegistry& other);
  PkiRegistry& operator=(const PkiRegistry& other);

  // Throws Errc::kParameter on duplicate ids or valid_from >= t_b.
  void add(SchemeInstance instance);
  bool contains(std::string_view scheme_id) const;
  // Throws Errc::kUnregisteredScheme.
  SchemeInstance get(std::string_view scheme_id) const;
  std::vector<SchemeInstance> all() const;
  std::size_t size() const;

  std::string to_json() const;
  static PkiRegistry from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static PkiRegistry load(const std::filesystem::path& path);

 private:
  mutable std::mutex mu_;
  std::map<std::string, SchemeInstance, std::less<>> instances_;
};

// valid_from <= t < t_b. Throws Errc::kUnregisteredScheme.
bool valid_at(const PkiRegistry& pki, std::string_view scheme_id, Time t);

}  // namespace elsa
