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

#include <benchmark/benchmark.h>

#include "elsa/golden.hpp"
#include "elsa/hash.hpp"
#include "elsa/hiding_commitment.hpp"
#include "elsa/random.hpp"
#include "elsa/shamir.hpp"
#include "elsa/signature.hpp"
#include "elsa/vector_commitment.hpp"
#include "elsa/verifier.hpp"

namespace {

using namespace elsa;

void BM_KeyedHash(benchmark::State& state) {
  DeterministicRandom rng(1);
  const auto& desc = hash_descriptor("sha256");
  const HashKey key = hash_keygen(desc, rng);
  const Value v = Value::bytes(rng.bytes(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(keyed_hash(desc, key, v));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_KeyedHash)->Arg(64)->Arg(1024)->Arg(16384);

void BM_HidingCommit(benchmark::State& state, const char* preset) {
  DeterministicRandom rng(2);
  const HidingParams p = hc_setup(preset, rng);
  const Value m = Value::bytes(rng.bytes(1024));
  for (auto _ : state) benchmark::DoNotOptimize(hc_commit(p, m, rng));
}
BENCHMARK_CAPTURE(BM_HidingCommit, hm256, "hm-256");
BENCHMARK_CAPTURE(BM_HidingCommit, hm512, "hm-512");

void BM_HidingVerify(benchmark::State& state, const char* preset) {
  DeterministicRandom rng(3);
  const HidingParams p = hc_setup(preset, rng);
  const Value m = Value::bytes(rng.bytes(1024));
  const auto [c, d] = hc_commit(p, m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hc_verify(p, m, c, d));
}
BENCHMARK_CAPTURE(BM_HidingVerify, hm256, "hm-256");
BENCHMARK_CAPTURE(BM_HidingVerify, hm512, "hm-512");

void BM_VcCommit(benchmark::State& state, const char* desc) {
  DeterministicRandom rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const VcParams p = vc_setup(desc, n, rng, "vc");
  std::vector<Value> msgs;
  for (std::size_t i = 0; i < n; ++i) msgs.push_back(Value::bytes(rng.bytes(1024)));
  for (auto _ : state) benchmark::DoNotOptimize(vc_commit(p, msgs, rng));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK_CAPTURE(BM_VcCommit, merkle_sha256, "merkle-sha256")->Arg(16)->Arg(256);
BENCHMARK_CAPTURE(BM_VcCommit, hiding_hm256, "hiding-hm256")->Arg(16)->Arg(256);

void BM_VcVerify(benchmark::State& state, const char* desc) {
  DeterministicRandom rng(5);
  const std::size_t n = 256;
  const VcParams p = vc_setup(desc, n, rng, "vc");
  std::vector<Value> msgs;
  for (std::size_t i = 0; i < n; ++i) msgs.push_back(Value::bytes(rng.bytes(1024)));
  const auto [c, dec] = vc_commit(p, msgs, rng);
  const Opening o = vc_open(p, dec, 77);
  for (auto _ : state) benchmark::DoNotOptimize(vc_verify(p, msgs[77], c, o, 77));
}
BENCHMARK_CAPTURE(BM_VcVerify, merkle_sha256, "merkle-sha256");
BENCHMARK_CAPTURE(BM_VcVerify, hiding_hm256, "hiding-hm256");

void BM_SignatureVerify(benchmark::State& state, const char* desc) {
  DeterministicRandom rng(6);
  auto key = sig_setup(desc, rng);
  const Value m = Value::str("benchmark message");
  const Bytes s = key->sign(m);
  const Bytes pk = key->public_key();
  for (auto _ : state) benchmark::DoNotOptimize(sig_verify(desc, pk, m, s));
}
BENCHMARK_CAPTURE(BM_SignatureVerify, ed25519, "ed25519");
BENCHMARK_CAPTURE(BM_SignatureVerify, mss_sha256_h4, "mss-sha256-h4");

void BM_Share(benchmark::State& state) {
  DeterministicRandom rng(7);
  const Bytes secret = rng.bytes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(share(secret, 4, 3, rng, "item"));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Share)->Arg(1024)->Arg(65536);

void BM_Reconstruct(benchmark::State& state) {
  DeterministicRandom rng(8);
  const Bytes secret = rng.bytes(static_cast<std::size_t>(state.range(0)));
  const auto shares = share(secret, 4, 3, rng, "item");
  const std::vector<Share> three(shares.begin(), shares.begin() + 3);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(three, 3));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Reconstruct)->Arg(1024)->Arg(65536);

void BM_VerifyGoldenChain(benchmark::State& state) {
  const GoldenTrace trace = build_golden_trace();
  const auto& pki = trace.deployment->pki;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        verify(pki, trace.t_verify, trace.dat, trace.t_store, trace.retrieved.evidence));
  }
}
BENCHMARK(BM_VerifyGoldenChain);

}  // namespace

BENCHMARK_MAIN();
