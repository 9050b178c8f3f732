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

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "elsa/canonical.hpp"
#include "elsa/clock.hpp"
#include "elsa/errors.hpp"
#include "elsa/hash.hpp"
#include "elsa/random.hpp"
#include "test_support.hpp"

namespace elsa {
namespace {

Value random_value(RandomSource& rng, int depth) {
  const auto pick = rng.uniform(10);
  if (depth == 0 || pick < 3) return Value::bytes(rng.bytes(rng.uniform(24)));
  if (pick < 5) return Value::uint(rng.next_u64());
  if (pick < 6) return Value::bottom();
  std::vector<Value> items;
  const auto n = rng.uniform(5);
  for (std::uint64_t i = 0; i < n; ++i) items.push_back(random_value(rng, depth - 1));
  return Value::tuple(std::move(items));
}

struct HashVector {
  Bytes key;
  Bytes encoding;
  Bytes digest;
};

std::vector<HashVector> load_vectors() {
  std::ifstream in(testing::data_dir() / "hash_vectors.txt");
  std::vector<HashVector> out;
  std::string k, e, d;
  while (in >> k >> e >> d) out.push_back({from_hex(k), from_hex(e), from_hex(d)});
  return out;
}

const HashDescriptor& descriptor_for(const HashVector& v) {
  return hash_descriptor(v.key.size() == 32 ? "sha256" : "sha512");
}

TEST(Encoding, FixedForms) {
  EXPECT_EQ(to_hex(encode(Value::bottom())), "0300000000");
  EXPECT_EQ(to_hex(encode(Value::uint(0))), "02000000080000000000000000");
  const Value t = Value::tuple({Value::str("ab"), Value::uint(1)});
  EXPECT_EQ(to_hex(encode(t)), "0100000014" "00000000026162" "02000000080000000000000001");
  EXPECT_EQ(encoded_size(t), encode(t).size());
}

TEST(Encoding, DecodeRejectsMalformedInput) {
  const Bytes good = encode(Value::tuple({Value::str("x"), Value::uint(7)}));
  for (std::size_t cut = 0; cut < good.size(); ++cut) {
    EXPECT_THROW(decode(ByteView(good).first(cut)), Error) << cut;
  }
  Bytes trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(decode(trailing), Error);
  EXPECT_THROW(decode(from_hex("0400000000")), Error);
  EXPECT_THROW(decode(from_hex("020000000100")), Error);
  EXPECT_THROW(decode(from_hex("030000000100")), Error);
  try {
    decode(from_hex("05"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDecode);
  }
}

TEST(Encoding, TypedAccessorsThrowOnKindMismatch) {
  EXPECT_THROW(Value::uint(1).as_bytes(), Error);
  EXPECT_THROW(Value::str("a").as_uint(), Error);
  EXPECT_THROW(Value::bottom().items(), Error);
  EXPECT_THROW(Value::tuple({Value::uint(1)}).expect_tuple(2), Error);
  EXPECT_THROW(Value::tuple({}).at(0), Error);
}

TEST(Encoding, RoundTripRandomTrees) {
  DeterministicRandom rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Value v = random_value(rng, 6);
    const Bytes enc = encode(v);
    EXPECT_EQ(decode(enc), v);
    EXPECT_EQ(encoded_size(v), enc.size());
  }
}

TEST(Encoding, DistinctValuesHaveDistinctEncodings) {
  DeterministicRandom rng(12);
  int distinct_pairs = 0;
  while (distinct_pairs < 10000) {
    const Value a = random_value(rng, 4);
    const Value b = random_value(rng, 4);
    if (a == b) continue;
    ++distinct_pairs;
    ASSERT_NE(encode(a), encode(b));
  }
}

TEST(Hash, MatchesReferenceVectors) {
  const auto vectors = load_vectors();
  ASSERT_EQ(vectors.size(), 48u);
  for (const auto& v : vectors) {
    EXPECT_EQ(encode(decode(v.encoding)), v.encoding);
    EXPECT_EQ(keyed_hash(descriptor_for(v), HashKey{v.key}, decode(v.encoding)), v.digest);
  }
}

TEST(Hash, VectorsSeparateValuesAndKeys) {
  const auto vectors = load_vectors();
  std::set<Bytes> digests;
  for (const auto& v : vectors) {
    EXPECT_TRUE(digests.insert(v.digest).second);
    // Same value under a different key of the same size.
    const auto& desc = descriptor_for(v);
    Bytes other = v.key;
    other[0] ^= 1;
    EXPECT_NE(keyed_hash(desc, HashKey{other}, decode(v.encoding)), v.digest);
  }
}

TEST(Hash, DeterministicAndKeyChecked) {
  DeterministicRandom rng(3);
  for (const char* name : {"sha256", "sha512"}) {
    const auto& d = hash_descriptor(name);
    const HashKey k = hash_keygen(d, rng);
    EXPECT_EQ(k.key.size(), d.key_size);
    const Value v = Value::tuple({Value::str("m"), Value::uint(4)});
    EXPECT_EQ(keyed_hash(d, k, v), keyed_hash(d, k, v));
    EXPECT_EQ(keyed_hash(d, k, v).size(), d.digest_size);
    EXPECT_NE(hash_keygen(d, rng).key, k.key);
    try {
      keyed_hash(d, HashKey{Bytes(3)}, v);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kParameter);
    }
  }
  EXPECT_EQ(hash_descriptor("sha256").digest_size, 32u);
  EXPECT_EQ(hash_descriptor("sha512").digest_size, 64u);
  try {
    hash_descriptor("md5");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownDescriptor);
  }
}

TEST(Clock, NeverMovesBackwards) {
  LogicalClock clock;
  DeterministicRandom rng(5);
  Time last = clock.now();
  for (int i = 0; i < 1000; ++i) {
    if (rng.uniform(2) == 0) {
      clock.advance_to(rng.uniform(500));
    } else {
      clock.advance_by(rng.uniform(3));
    }
    EXPECT_GE(clock.now(), last);
    last = clock.now();
  }
  const Time before = clock.now();
  EXPECT_EQ(clock.advance_to(before == 0 ? 0 : before - 1), before);
}

TEST(Bytes, HexRoundTrip) {
  const Bytes b{0x00, 0x7f, 0xff, 0x10};
  EXPECT_EQ(to_hex(b), "007fff10");
  EXPECT_EQ(from_hex("007FFF10"), b);
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

}  // namespace
}  // namespace elsa
