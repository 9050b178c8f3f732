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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elsa/archive.hpp"
#include "elsa/clock.hpp"
#include "elsa/evidence_service.hpp"
#include "elsa/pki.hpp"
#include "elsa/random.hpp"
#include "elsa/sharing_system.hpp"
#include "elsa/timestamp.hpp"

namespace elsa::cli {

// Parsed config file. Relative paths resolve against the file's directory.
//   state_dir          clock, PKI, signing and timestamp keys; local
//                      evidence service under es/
//   threshold          T
//   shareholders       directories or tcp://host:port endpoints
//   evidence_service   "local" (default), a directory, or tcp://host:port
//   seed               optional; makes randomness reproducible
//   sign_commitment    optional, default false
struct Config {
  std::filesystem::path path;
  std::filesystem::path state_dir;
  std::size_t threshold = 0;
  std::vector<std::string> shareholders;
  std::string evidence_service = "local";
  std::optional<std::uint64_t> seed;
  bool sign_commitment = false;

  static Config load(const std::filesystem::path& path);
  void save() const;
  std::filesystem::path resolve(const std::string& p) const;
};

// Everything a command needs, loaded from the state directory.
class Context {
 public:
  explicit Context(Config config);
  ~Context();

  const Config& config() const { return config_; }
  LogicalClock& clock() { return clock_; }
  PkiRegistry& pki() { return pki_; }
  KeyRing& keys() { return keys_; }
  TimestampDirectory& timestamps() { return timestamps_; }
  RandomSource& rng() { return *rng_; }

  std::shared_ptr<SharingSystem> make_sharing(const std::vector<std::string>& endpoints,
                                              std::size_t threshold);
  Archive& archive();

  // Generates a key or parameters, registers the instance and stores the
  // secret part in the state directory.
  void add_scheme(const std::string& id, SchemeKind kind, const std::string& descriptor,
                  Time valid_from, Time t_b, std::uint64_t max_length);

  // Writes clock, PKI and key state (few-time keys advance on every use).
  void save();

 private:
  void load_keys();
  void save_key(const std::string& id, SchemeKind kind, const SigningKey& key);

  Config config_;
  LogicalClock clock_;
  PkiRegistry pki_;
  KeyRing keys_;
  TimestampDirectory timestamps_;
  std::unique_ptr<RandomSource> rng_;
  std::vector<std::pair<std::string, SchemeKind>> key_ids_;
  std::shared_ptr<SharingSystem> sharing_;
  std::shared_ptr<EvidenceServiceApi> evidence_;
  std::unique_ptr<Archive> archive_;
};

}  // namespace elsa::cli
