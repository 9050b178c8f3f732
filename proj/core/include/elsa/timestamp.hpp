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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "elsa/canonical.hpp"
#include "elsa/clock.hpp"
#include "elsa/pki.hpp"
#include "elsa/signature.hpp"

namespace elsa {

struct TimestampToken {
  Time t = 0;
  Bytes signature;
  std::string scheme_id;

  // Tuple[UInt(t), ByteString(s), ByteString(scheme_id)]
  Value to_value() const;
  static TimestampToken from_value(const Value& v);
  friend bool operator==(const TimestampToken&, const TimestampToken&) = default;
};

// A signature-based timestamp authority reading the shared logical clock.
class TimestampService {
 public:
  TimestampService(std::string scheme_id, std::unique_ptr<SigningKey> key,
                   const LogicalClock& clock, const PkiRegistry& pki);

  const std::string& scheme_id() const { return scheme_id_; }
  const SigningKey& key() const { return *key_; }

  // Signs Tuple[m, UInt(now)]. Throws Errc::kSchemeExpired once the
  // instance is no longer valid at the current time.
  TimestampToken stamp(const Value& m);

  std::uint64_t tokens_issued() const;

 private:
  std::string scheme_id_;
  std::unique_ptr<SigningKey> key_;
  const LogicalClock& clock_;
  const PkiRegistry& pki_;
  mutable std::mutex mu_;
  std::uint64_t issued_ = 0;
};

// Creates a service with a fresh key and registers it in the PKI.
std::unique_ptr<TimestampService> ts_setup(std::string_view descriptor, std::string scheme_id,
                                           PkiRegistry& pki, const LogicalClock& clock,
                                           Time valid_from, Time t_b, RandomSource& rng);

// Signature check over Tuple[m, UInt(token.t)], scheme validity at t_check
// and, when given, token.t == t_expected. Never throws.
bool ts_verify(const PkiRegistry& pki, Time t_check, const Value& m,
               const TimestampToken& token, std::optional<Time> t_expected);

// Timestamp services reachable by id.
class TimestampDirectory {
 public:
  void add(std::shared_ptr<TimestampService> service);
  // Throws Errc::kUnregisteredScheme.
  TimestampService& get(std::string_view scheme_id) const;
  bool contains(std::string_view scheme_id) const;
  std::uint64_t total_tokens() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<TimestampService>, std::less<>> services_;
};

}  // namespace elsa
