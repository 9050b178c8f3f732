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

#include "elsa/verifier.hpp"

#include "elsa/errors.hpp"

namespace elsa {

namespace {

bool scheme_valid(const PkiRegistry& pki, const std::string& id, SchemeKind kind, Time t) {
  if (!pki.contains(id)) return false;
  const SchemeInstance inst = pki.get(id);
  return inst.kind == kind && inst.valid_from <= t && t < inst.t_b;
}

bool check_commitment(const PkiRegistry& pki, const std::string& vc_id, Time t_valid,
                      const Value& m, const Digest& c, const Opening& d, std::uint64_t position) {
  if (!scheme_valid(pki, vc_id, SchemeKind::kVectorCommitment, t_valid)) return false;
  const VcParams params = vc_params_from_pki(pki, vc_id);
  return vc_verify(params, m, VectorCommitment{vc_id, c}, d, position);
}

bool check_signature(const PkiRegistry& pki, const EvidenceBundle& b, ByteView dat, Time t,
                     const ComPart& first) {
  if (!scheme_valid(pki, b.sig_id, SchemeKind::kSignature, t)) return false;
  const SchemeInstance inst = pki.get(b.sig_id);
  if (b.s.is_bytes()) {
    return sig_verify(inst.descriptor, inst.public_params, Value::bytes(dat), b.s.as_bytes());
  }
  const auto& f = b.s.expect_tuple(1);
  return sig_verify(inst.descriptor, inst.public_params,
                    commitment_sign_message(first.vc_id, first.c), f[0].as_bytes());
}

VerifyResult reject(std::size_t entry, std::string reason) {
  return VerifyResult{false, entry, std::move(reason)};
}

}  // namespace

VerifyResult verify_evidence(const PkiRegistry& pki, Time t_verify, ByteView dat, Time t_store,
                             const EvidenceBundle& bundle) {
  const EvidenceList& e = bundle.entries;
  const std::size_t n = e.size();
  try {
    if (n == 0) return reject(0, "empty evidence");
    if (!e[0].com || !e[0].com->d) return reject(0, "first entry is not an opened commitment");
    if (!bundle.s.is_bytes() && !bundle.s.is_tuple()) return reject(n, "malformed signature");

    // Per-file signatures are part of the committed triple; a signature
    // over the commitment cannot be, so Bottom stands in for it.
    const Value s_committed = bundle.s.is_bytes() ? bundle.s : Value::bottom();
    const Value triple = Value::tuple({Value::bytes(dat), Value::str(bundle.sig_id), s_committed});

    auto next_token = [&](std::size_t i) { return i + 1 < n ? e[i + 1].ts.t : t_verify; };
    auto next_com = [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (e[j].com) return e[j].ts.t;
      }
      return t_verify;
    };

    std::vector<Value> chain;
    for (std::size_t i = 0; i < n; ++i) {
      const EvidenceEntry& entry = e[i];
      if (entry.com.has_value() == entry.renew.has_value()) return reject(i, "malformed entry");
      if (entry.ts.t > t_verify) return reject(i, "token from the future");
      if (i > 0 && entry.ts.t < e[i - 1].ts.t) return reject(i, "token times decrease");
      const Time t_nt = next_token(i);

      if (i == 0) {
        const ComPart& com = *entry.com;
        if (!check_commitment(pki, com.vc_id, next_com(i), triple, com.c, *com.d, com.position)) {
          return reject(i, "data commitment invalid");
        }
        chain = {entry.chain_value()};
      } else if (entry.renew) {
        const RenewPart& r = *entry.renew;
        if (!check_commitment(pki, r.vc_id, t_nt, Value::tuple(chain), r.c, r.d, r.position)) {
          return reject(i, "renewal commitment invalid");
        }
        chain.push_back(entry.chain_value());
      } else {
        const ComPart& com = *entry.com;
        if (!com.d) return reject(i, "commitment without opening");
        std::vector<Value> prior;
        for (std::size_t j = 0; j < i; ++j) prior.push_back(e[j].to_value());
        const Value m = Value::tuple({Value::bytes(dat), Value::str(bundle.sig_id), bundle.s,
                                      Value::tuple(std::move(prior))});
        if (!check_commitment(pki, com.vc_id, next_com(i), m, com.c, *com.d, com.position)) {
          return reject(i, "data commitment invalid");
        }
        chain = {entry.chain_value()};
      }
    }

    // Signatures last: they dominate the cost, and most forgeries already
    // fail a hash check above.
    if (!check_signature(pki, bundle, dat, e[0].ts.t, *e[0].com)) {
      return reject(0, "signature invalid");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Value stamped = stamped_commitment(e[i].vc_id(), e[i].c());
      const std::optional<Time> expected = i == 0 ? std::optional<Time>(t_store) : std::nullopt;
      if (!ts_verify(pki, next_token(i), stamped, e[i].ts, expected)) {
        return reject(i, "timestamp invalid");
      }
    }
  } catch (const std::exception& ex) {
    return reject(n, std::string("malformed evidence: ") + ex.what());
  }
  return VerifyResult{true, 0, {}};
}

}  // namespace elsa
