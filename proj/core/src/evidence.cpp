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

#include "elsa/evidence.hpp"

#include "elsa/errors.hpp"

namespace elsa {

Value EvidenceEntry::chain_value() const {
  if (com) {
    return Value::tuple({Value::str("com"), Value::str(com->vc_id), Value::bytes(com->c),
                         ts.to_value()});
  }
  return Value::tuple({Value::str("renew"), Value::str(renew->vc_id), Value::bytes(renew->c),
                       renew->d.to_value(), Value::uint(renew->position), ts.to_value()});
}

EvidenceEntry EvidenceEntry::from_chain_value(const Value& v) {
  const auto& f = v.items();
  require(!f.empty(), Errc::kDecode, "empty evidence entry");
  const std::string tag = f[0].as_string();
  EvidenceEntry e;
  if (tag == "com") {
    v.expect_tuple(4);
    e.com = ComPart{f[1].as_string(), f[2].as_bytes(), 0, std::nullopt};
    e.ts = TimestampToken::from_value(f[3]);
  } else if (tag == "renew") {
    v.expect_tuple(6);
    e.renew = RenewPart{f[1].as_string(), f[2].as_bytes(), f[4].as_uint(),
                        Opening::from_value(f[3])};
    e.ts = TimestampToken::from_value(f[5]);
  } else {
    fail(Errc::kDecode, "unknown evidence entry tag '" + tag + "'");
  }
  return e;
}

Value EvidenceEntry::to_value() const {
  if (com) {
    return Value::tuple({Value::uint(0), Value::str(com->vc_id), Value::bytes(com->c),
                         Value::uint(com->position),
                         com->d ? com->d->to_value() : Value::bottom(), ts.to_value()});
  }
  return Value::tuple({Value::uint(1), Value::str(renew->vc_id), Value::bytes(renew->c),
                       Value::uint(renew->position), renew->d.to_value(), ts.to_value()});
}

EvidenceEntry EvidenceEntry::from_value(const Value& v) {
  const auto& f = v.expect_tuple(6);
  EvidenceEntry e;
  switch (f[0].as_uint()) {
    case 0:
      e.com = ComPart{f[1].as_string(), f[2].as_bytes(), f[3].as_uint(),
                      f[4].is_bottom() ? std::nullopt
                                       : std::optional<Opening>(Opening::from_value(f[4]))};
      break;
    case 1:
      e.renew = RenewPart{f[1].as_string(), f[2].as_bytes(), f[3].as_uint(),
                          Opening::from_value(f[4])};
      break;
    default:
      fail(Errc::kDecode, "unknown evidence entry kind");
  }
  e.ts = TimestampToken::from_value(f[5]);
  return e;
}

Value chain_value(std::span<const EvidenceEntry> entries) {
  std::vector<Value> items;
  items.reserve(entries.size());
  for (const auto& e : entries) items.push_back(e.chain_value());
  return Value::tuple(std::move(items));
}

Value stamped_commitment(const std::string& vc_id, const Digest& c) {
  return Value::tuple({Value::str(vc_id), Value::bytes(c)});
}

}  // namespace elsa
