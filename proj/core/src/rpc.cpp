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

#include "elsa/rpc.hpp"

#include <exception>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

Value ok(Value result = Value::bottom()) { return Value::tuple({Value::uint(0), std::move(result)}); }

Value call_remote(Transport& t, const char* op, std::vector<Value> args) {
  args.insert(args.begin(), Value::str(op));
  const Value response = decode(t.call(encode(Value::tuple(std::move(args)))));
  const auto& f = response.expect_tuple(2);
  const std::uint64_t status = f[0].as_uint();
  if (status == 0) return f[1];
  fail(static_cast<Errc>(status - 1), f[1].as_string());
}

// Wraps a dispatcher so that every failure becomes an error response.
Handler make_handler(std::function<Value(const std::string&, const std::vector<Value>&)> dispatch) {
  return [dispatch = std::move(dispatch)](const Bytes& request) -> Bytes {
    Value response;
    try {
      const Value req = decode(request);
      const auto& f = req.items();
      require(!f.empty(), Errc::kDecode, "empty request");
      const std::vector<Value> args(f.begin() + 1, f.end());
      response = ok(dispatch(f[0].as_string(), args));
    } catch (const Error& e) {
      response = Value::tuple({Value::uint(static_cast<std::uint64_t>(e.code()) + 1),
                               Value::str(e.detail())});
    } catch (const std::exception& e) {
      response = Value::tuple({Value::uint(static_cast<std::uint64_t>(Errc::kTransport) + 1),
                               Value::str(e.what())});
    }
    return encode(response);
  };
}

const Value& arg(const std::vector<Value>& args, std::size_t i) {
  require(i < args.size(), Errc::kDecode, "missing request argument");
  return args[i];
}

Value parts_value(const std::map<std::string, Bytes>& parts) {
  std::vector<Value> out;
  for (const auto& [name, bytes] : parts) {
    out.push_back(Value::tuple({Value::str(name), Value::bytes(bytes)}));
  }
  return Value::tuple(std::move(out));
}

std::map<std::string, Bytes> parts_from(const Value& v) {
  std::map<std::string, Bytes> out;
  for (const auto& p : v.items()) {
    const auto& f = p.expect_tuple(2);
    out[f[0].as_string()] = f[1].as_bytes();
  }
  return out;
}

Value strings_value(const std::vector<std::string>& names) {
  std::vector<Value> out;
  for (const auto& n : names) out.push_back(Value::str(n));
  return Value::tuple(std::move(out));
}

std::vector<std::string> strings_from(const Value& v) {
  std::vector<std::string> out;
  for (const auto& n : v.items()) out.push_back(n.as_string());
  return out;
}

}  // namespace

Handler shareholder_handler(std::shared_ptr<ShareholderApi> target) {
  return make_handler([target](const std::string& op, const std::vector<Value>& a) -> Value {
    if (op == "INFO") {
      const ShareholderInfo i = target->info();
      return Value::tuple({Value::uint(i.x), Value::uint(i.epoch), Value::uint(i.items),
                           Value::uint(i.bytes)});
    }
    if (op == "PUT") {
      target->put(arg(a, 0).as_string(), arg(a, 1).as_bytes(), arg(a, 2).as_uint() != 0);
      return Value::bottom();
    }
    if (op == "GET") {
      auto s = target->get(arg(a, 0).as_string());
      if (!s) return Value::bottom();
      return Value::tuple({Value::uint(s->x), Value::bytes(s->y), Value::str(s->name),
                           Value::uint(s->epoch)});
    }
    if (op == "NAMES") return strings_value(target->names());
    if (op == "RESHARE_BEGIN") {
      const ReshareOutbox out = target->reshare_begin(arg(a, 0).as_uint(), arg(a, 1).as_uint());
      std::vector<Value> items;
      for (const auto& [to, parts] : out) {
        items.push_back(Value::tuple({Value::uint(to), parts_value(parts)}));
      }
      return Value::tuple(std::move(items));
    }
    if (op == "RESHARE_SUBSHARE") {
      const std::uint64_t from = arg(a, 0).as_uint();
      require(from <= 255, Errc::kDecode, "bad shareholder index");
      target->reshare_subshare(static_cast<std::uint8_t>(from), parts_from(arg(a, 1)));
      return Value::bottom();
    }
    if (op == "RESHARE_COMMIT") {
      target->reshare_commit();
      return Value::bottom();
    }
    if (op == "RESHARE_ABORT") {
      target->reshare_abort();
      return Value::bottom();
    }
    if (op == "SHUTDOWN") {
      target->shutdown();
      return Value::bottom();
    }
    if (op == "WIPE") {
      target->wipe();
      return Value::bottom();
    }
    fail(Errc::kDecode, "unknown shareholder op " + op);
  });
}

Handler evidence_handler(std::shared_ptr<EvidenceServiceApi> target) {
  return make_handler([target](const std::string& op, const std::vector<Value>& a) -> Value {
    if (op == "ADD_COM") {
      target->add_com(strings_from(arg(a, 0)), arg(a, 1).as_string(), arg(a, 2).as_bytes(),
                      arg(a, 3).as_string());
      return Value::bottom();
    }
    if (op == "RENEW_TS") {
      return Value::uint(target->renew_ts(arg(a, 0).as_string(), arg(a, 1).as_string()) ? 1 : 0);
    }
    if (op == "ADD_COM_RENEW") {
      NamePositions positions;
      for (const auto& p : arg(a, 0).items()) {
        const auto& f = p.expect_tuple(2);
        positions.emplace_back(f[0].as_string(), f[1].as_uint());
      }
      target->add_com_renew(positions, arg(a, 1).as_string(), arg(a, 2).as_bytes(),
                            arg(a, 3).as_string());
      return Value::bottom();
    }
    if (op == "GET_EVIDENCE") {
      std::vector<Value> entries;
      for (const auto& e : target->get_evidence(arg(a, 0).as_string())) {
        entries.push_back(e.to_value());
      }
      return Value::tuple(std::move(entries));
    }
    if (op == "NAMES") return strings_value(target->names());
    if (op == "STATS") {
      const EvidenceStats s = target->stats();
      return Value::tuple({Value::uint(s.names), Value::uint(s.lists), Value::uint(s.renew_lists),
                           Value::uint(s.tokens), Value::uint(s.list_bytes),
                           Value::uint(s.index_bytes)});
    }
    if (op == "WIPE") {
      target->wipe();
      return Value::bottom();
    }
    fail(Errc::kDecode, "unknown evidence op " + op);
  });
}

Value ShareholderProxy::call(const char* op, std::vector<Value> args) {
  return call_remote(*transport_, op, std::move(args));
}

ShareholderInfo ShareholderProxy::info() {
  const Value v = call("INFO");
  const auto& f = v.expect_tuple(4);
  require(f[0].as_uint() >= 1 && f[0].as_uint() <= 255, Errc::kDecode, "bad shareholder index");
  return {static_cast<std::uint8_t>(f[0].as_uint()), f[1].as_uint(), f[2].as_uint(),
          f[3].as_uint()};
}

void ShareholderProxy::put(const std::string& name, const Bytes& y, bool overwrite) {
  call("PUT", {Value::str(name), Value::bytes(y), Value::uint(overwrite ? 1 : 0)});
}

std::optional<Share> ShareholderProxy::get(const std::string& name) {
  const Value v = call("GET", {Value::str(name)});
  if (v.is_bottom()) return std::nullopt;
  const auto& f = v.expect_tuple(4);
  require(f[0].as_uint() <= 255, Errc::kDecode, "bad share index");
  return Share{static_cast<std::uint8_t>(f[0].as_uint()), f[1].as_bytes(), f[2].as_string(),
               f[3].as_uint()};
}

std::vector<std::string> ShareholderProxy::names() { return strings_from(call("NAMES")); }

ReshareOutbox ShareholderProxy::reshare_begin(std::size_t n, std::size_t t) {
  const Value v = call("RESHARE_BEGIN", {Value::uint(n), Value::uint(t)});
  ReshareOutbox out;
  for (const auto& item : v.items()) {
    const auto& f = item.expect_tuple(2);
    require(f[0].as_uint() <= 255, Errc::kDecode, "bad recipient");
    out[static_cast<std::uint8_t>(f[0].as_uint())] = parts_from(f[1]);
  }
  return out;
}

void ShareholderProxy::reshare_subshare(std::uint8_t from,
                                        const std::map<std::string, Bytes>& parts) {
  call("RESHARE_SUBSHARE", {Value::uint(from), parts_value(parts)});
}

void ShareholderProxy::reshare_commit() { call("RESHARE_COMMIT"); }
void ShareholderProxy::reshare_abort() { call("RESHARE_ABORT"); }
void ShareholderProxy::shutdown() { call("SHUTDOWN"); }
void ShareholderProxy::wipe() { call("WIPE"); }

Value EvidenceProxy::call(const char* op, std::vector<Value> args) {
  return call_remote(*transport_, op, std::move(args));
}

void EvidenceProxy::add_com(const std::vector<std::string>& names, const std::string& vc_id,
                            const Digest& c, const std::string& ts_id) {
  call("ADD_COM", {strings_value(names), Value::str(vc_id), Value::bytes(c), Value::str(ts_id)});
}

bool EvidenceProxy::renew_ts(const std::string& vc_id, const std::string& ts_id) {
  return call("RENEW_TS", {Value::str(vc_id), Value::str(ts_id)}).as_uint() != 0;
}

void EvidenceProxy::add_com_renew(const NamePositions& positions, const std::string& vc_id,
                                  const Digest& c, const std::string& ts_id) {
  std::vector<Value> items;
  for (const auto& [name, pos] : positions) {
    items.push_back(Value::tuple({Value::str(name), Value::uint(pos)}));
  }
  call("ADD_COM_RENEW",
       {Value::tuple(std::move(items)), Value::str(vc_id), Value::bytes(c), Value::str(ts_id)});
}

EvidenceList EvidenceProxy::get_evidence(const std::string& name) {
  const Value v = call("GET_EVIDENCE", {Value::str(name)});
  EvidenceList out;
  for (const auto& e : v.items()) {
    out.push_back(EvidenceEntry::from_value(e));
  }
  return out;
}

std::vector<std::string> EvidenceProxy::names() { return strings_from(call("NAMES")); }

EvidenceStats EvidenceProxy::stats() {
  const Value v = call("STATS");
  const auto& f = v.expect_tuple(6);
  return {f[0].as_uint(), f[1].as_uint(), f[2].as_uint(),
          f[3].as_uint(), f[4].as_uint(), f[5].as_uint()};
}

void EvidenceProxy::wipe() { call("WIPE"); }

}  // namespace elsa
