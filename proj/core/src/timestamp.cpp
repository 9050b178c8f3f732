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

#include "elsa/timestamp.hpp"

#include "elsa/errors.hpp"

namespace elsa {

namespace {
Value stamped_message(const Value& m, Time t) { return Value::tuple({m, Value::uint(t)}); }
}  // namespace

Value TimestampToken::to_value() const {
  return Value::tuple({Value::uint(t), Value::bytes(signature), Value::str(scheme_id)});
}

TimestampToken TimestampToken::from_value(const Value& v) {
  const auto& f = v.expect_tuple(3);
  return {f[0].as_uint(), f[1].as_bytes(), f[2].as_string()};
}

TimestampService::TimestampService(std::string scheme_id, std::unique_ptr<SigningKey> key,
                                   const LogicalClock& clock, const PkiRegistry& pki)
    : scheme_id_(std::move(scheme_id)), key_(std::move(key)), clock_(clock), pki_(pki) {}

TimestampToken TimestampService::stamp(const Value& m) {
  std::lock_guard lock(mu_);
  const Time now = clock_.now();
  require(valid_at(pki_, scheme_id_, now), Errc::kSchemeExpired,
          "timestamp scheme " + scheme_id_ + " is not valid at t=" + std::to_string(now));
  TimestampToken token{now, key_->sign(stamped_message(m, now)), scheme_id_};
  ++issued_;
  return token;
}

std::uint64_t TimestampService::tokens_issued() const {
  std::lock_guard lock(mu_);
  return issued_;
}

std::unique_ptr<TimestampService> ts_setup(std::string_view descriptor, std::string scheme_id,
                                           PkiRegistry& pki, const LogicalClock& clock,
                                           Time valid_from, Time t_b, RandomSource& rng) {
  auto key = sig_setup(descriptor, rng);
  pki.add(SchemeInstance{scheme_id, SchemeKind::kTimestamp, std::string(descriptor),
                         key->public_key(), valid_from, t_b});
  return std::make_unique<TimestampService>(std::move(scheme_id), std::move(key), clock, pki);
}

bool ts_verify(const PkiRegistry& pki, Time t_check, const Value& m,
               const TimestampToken& token, std::optional<Time> t_expected) {
  if (t_expected && token.t != *t_expected) return false;
  if (!pki.contains(token.scheme_id)) return false;
  const SchemeInstance inst = pki.get(token.scheme_id);
  if (inst.kind != SchemeKind::kTimestamp) return false;
  if (!(inst.valid_from <= t_check && t_check < inst.t_b)) return false;
  return sig_verify(inst.descriptor, inst.public_params, stamped_message(m, token.t),
                    token.signature);
}

void TimestampDirectory::add(std::shared_ptr<TimestampService> service) {
  std::lock_guard lock(mu_);
  std::string id = service->scheme_id();
  services_[std::move(id)] = std::move(service);
}

TimestampService& TimestampDirectory::get(std::string_view scheme_id) const {
  std::lock_guard lock(mu_);
  auto it = services_.find(scheme_id);
  require(it != services_.end(), Errc::kUnregisteredScheme,
          "no timestamp service " + std::string(scheme_id));
  return *it->second;
}

bool TimestampDirectory::contains(std::string_view scheme_id) const {
  std::lock_guard lock(mu_);
  return services_.find(scheme_id) != services_.end();
}

std::uint64_t TimestampDirectory::total_tokens() const {
  std::lock_guard lock(mu_);
  std::uint64_t n = 0;
  for (const auto& [_, s] : services_) n += s->tokens_issued();
  return n;
}

}  // namespace elsa
