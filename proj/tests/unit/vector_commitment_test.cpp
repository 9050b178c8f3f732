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

#include "elsa/errors.hpp"
#include "elsa/random.hpp"
#include "elsa/vector_commitment.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace elsa {
namespace {

using nlohmann::json;

std::vector<Value> messages(std::size_t n, RandomSource& rng) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Value::tuple({Value::bytes(rng.bytes(32)), Value::uint(i)}));
  }
  return out;
}

Digest h(const VcParams& p, const Value& v) { return keyed_hash(p.hash(), p.tree_key, v); }

Digest node(const VcParams& p, const Digest& l, const Digest& r) {
  return h(p, Value::tuple({Value::bytes(l), Value::bytes(r)}));
}

class VcScheme : public ::testing::TestWithParam<std::string> {};

TEST_P(VcScheme, OpensEveryIndexForEveryLength) {
  DeterministicRandom rng(1);
  const VcParams p = vc_setup(GetParam(), 17, rng, "vc");
  for (std::size_t n = 1; n <= 17; ++n) {
    const auto msgs = messages(n, rng);
    const auto [c, dec] = vc_commit(p, msgs, rng);
    EXPECT_EQ(dec.depth, tree_depth(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Opening o = vc_open(p, dec, i);
      EXPECT_EQ(o.path.size(), dec.depth);
      EXPECT_TRUE(vc_verify(p, msgs[i], c, o, i)) << "n=" << n << " i=" << i;
      EXPECT_EQ(Opening::from_value(o.to_value()), o);
    }
  }
}

TEST_P(VcScheme, OpeningAtAnotherIndexFails) {
  DeterministicRandom rng(2);
  const VcParams p = vc_setup(GetParam(), 8, rng, "vc");
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto msgs = messages(n, rng);
    const auto [c, dec] = vc_commit(p, msgs, rng);
    for (std::size_t i = 0; i < n; ++i) {
      const Opening o = vc_open(p, dec, i);
      for (std::size_t j = 0; j < 8; ++j) {
        if (j == i) continue;
        EXPECT_FALSE(vc_verify(p, msgs[i], c, o, j)) << n << " " << i << "->" << j;
        Opening moved = o;
        moved.index = j;
        EXPECT_FALSE(vc_verify(p, msgs[i], c, moved, j)) << n << " " << i << "->" << j;
      }
    }
  }
}

TEST_P(VcScheme, EveryPathByteFlipFails) {
  DeterministicRandom rng(3);
  const VcParams p = vc_setup(GetParam(), 4, rng, "vc");
  const auto msgs = messages(4, rng);
  const auto [c, dec] = vc_commit(p, msgs, rng);
  for (std::size_t i = 0; i < 4; ++i) {
    const Opening o = vc_open(p, dec, i);
    for (std::size_t k = 0; k < o.path.size(); ++k) {
      for (std::size_t b = 0; b < o.path[k].size(); ++b) {
        for (int bit = 0; bit < 8; ++bit) {
          Opening bad = o;
          bad.path[k][b] ^= static_cast<std::uint8_t>(1 << bit);
          ASSERT_FALSE(vc_verify(p, msgs[i], c, bad, i));
        }
      }
    }
    VectorCommitment bad_c = c;
    bad_c.c[0] ^= 1;
    EXPECT_FALSE(vc_verify(p, msgs[i], bad_c, o, i));
  }
}

TEST_P(VcScheme, OpeningsCarryNoOtherPlaintext) {
  DeterministicRandom rng(4);
  const VcParams p = vc_setup(GetParam(), 9, rng, "vc");
  const auto msgs = messages(9, rng);
  const auto [c, dec] = vc_commit(p, msgs, rng);
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const Bytes opening = encode(vc_open(p, dec, i).to_value());
    for (std::size_t j = 0; j < msgs.size(); ++j) {
      if (j == i) continue;
      EXPECT_FALSE(contains(opening, encode(msgs[j]))) << i << " leaks " << j;
      EXPECT_FALSE(contains(opening, msgs[j].at(0).as_bytes())) << i << " leaks " << j;
    }
  }
}

// A 4-bit digest is not binding, so the toy flavour is left out here.
class VcBinding : public ::testing::TestWithParam<std::string> {};

TEST_P(VcBinding, PositionBindingProbe) {
  DeterministicRandom rng(5);
  const VcParams p = vc_setup(GetParam(), 8, rng, "vc");
  const auto msgs = messages(6, rng);
  const auto [c, dec] = vc_commit(p, msgs, rng);
  std::vector<Opening> openings;
  for (std::size_t i = 0; i < msgs.size(); ++i) openings.push_back(vc_open(p, dec, i));
  const int attempts = GetParam() == "merkle-sha256" ? 100000 : 10000;
  for (int a = 0; a < attempts; ++a) {
    const std::size_t i = rng.uniform(msgs.size());
    Opening o = openings[rng.uniform(msgs.size())];
    o.index = i;
    if (!o.path.empty() && rng.uniform(2) == 0) {
      o.path[rng.uniform(o.path.size())][rng.uniform(32)] ^= 0x40;
    }
    const Value forged = (a % 3 == 0) ? msgs[rng.uniform(msgs.size())]
                                      : Value::bytes(rng.bytes(1 + rng.uniform(8)));
    if (forged == msgs[i]) continue;
    ASSERT_FALSE(vc_verify(p, forged, c, o, i)) << a;
  }
}

TEST_P(VcScheme, LengthErrors) {
  DeterministicRandom rng(6);
  try {
    vc_setup(GetParam(), 0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kLength);
  }
  const VcParams p = vc_setup(GetParam(), 3, rng, "vc");
  try {
    vc_commit(p, std::vector<Value>{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kLength);
  }
  try {
    vc_commit(p, messages(4, rng), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kLength);
  }
  const auto [c, dec] = vc_commit(p, messages(3, rng), rng);
  try {
    vc_open(p, dec, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIndexOutOfRange);
  }
}

TEST_P(VcScheme, ParamsSurviveThePki) {
  DeterministicRandom rng(7);
  const VcParams p = vc_setup(GetParam(), 5, rng, "vc-x");
  PkiRegistry pki;
  vc_register(pki, p, 0, 10);
  const VcParams back = vc_params_from_pki(pki, "vc-x");
  EXPECT_EQ(back.to_value(), p.to_value());
  EXPECT_EQ(back.scheme_id, "vc-x");
  const auto msgs = messages(5, rng);
  const auto [c, dec] = vc_commit(p, msgs, rng);
  EXPECT_TRUE(vc_verify(back, msgs[2], c, vc_open(p, dec, 2), 2));
}

INSTANTIATE_TEST_SUITE_P(Descriptors, VcScheme,
                         ::testing::Values("merkle-sha256", "merkle-sha512", "hiding-hm256",
                                           "hiding-toy4"));
INSTANTIATE_TEST_SUITE_P(Descriptors, VcBinding,
                         ::testing::Values("merkle-sha256", "merkle-sha512", "hiding-hm256"));

TEST(Merkle, MatchesReferenceTrees) {
  const json doc = json::parse(testing::read_text(testing::data_dir() / "merkle_vectors.json"));
  DeterministicRandom rng(8);
  VcParams p = vc_setup("merkle-sha256", 5, rng, "vc");
  p.tree_key = HashKey{from_hex(doc["key"].get<std::string>())};
  std::vector<Value> msgs;
  for (const auto& m : doc["messages"]) msgs.push_back(Value::str(m.get<std::string>()));
  for (const auto& tc : doc["cases"]) {
    const auto n = tc["n"].get<std::size_t>();
    const std::span<const Value> prefix(msgs.data(), n);
    const auto [c, dec] = vc_commit(p, prefix, rng);
    EXPECT_EQ(dec.depth, tc["depth"].get<std::uint32_t>());
    EXPECT_EQ(to_hex(dec.levels[0][0]), tc["root"].get<std::string>());
    EXPECT_EQ(to_hex(c.c), tc["c"].get<std::string>());
    for (std::size_t i = 0; i < n; ++i) {
      const Opening o = vc_open(p, dec, i);
      std::vector<std::string> path;
      for (const auto& d : o.path) path.push_back(to_hex(d));
      EXPECT_EQ(path, tc["paths"][i].get<std::vector<std::string>>()) << n << " " << i;
    }
  }
}

TEST(Merkle, SmallTreesByHand) {
  DeterministicRandom rng(9);
  const VcParams p = vc_setup("merkle-sha256", 4, rng, "vc");
  const auto msgs = messages(4, rng);
  auto root_c = [&](std::uint64_t depth, const Digest& root) {
    return h(p, Value::tuple({Value::uint(depth), Value::bytes(root)}));
  };

  const auto [c1, d1] = vc_commit(p, std::span(msgs).first(1), rng);
  EXPECT_EQ(c1.c, root_c(0, h(p, msgs[0])));
  EXPECT_TRUE(vc_open(p, d1, 0).path.empty());

  const auto [c2, d2] = vc_commit(p, std::span(msgs).first(2), rng);
  EXPECT_EQ(c2.c, root_c(1, node(p, h(p, msgs[0]), h(p, msgs[1]))));
  EXPECT_EQ(vc_open(p, d2, 0).path, std::vector<Digest>{h(p, msgs[1])});

  const auto [c3, d3] = vc_commit(p, std::span(msgs).first(3), rng);
  const Digest pad = h(p, Value::bottom());
  EXPECT_EQ(c3.c, root_c(2, node(p, node(p, h(p, msgs[0]), h(p, msgs[1])),
                                 node(p, h(p, msgs[2]), pad))));

  const auto [c4, d4] = vc_commit(p, msgs, rng);
  const std::vector<Digest> expected{h(p, msgs[3]), node(p, h(p, msgs[0]), h(p, msgs[1]))};
  EXPECT_EQ(vc_open(p, d4, 2).path, expected);
}

TEST(Merkle, DeterministicInKeyAndMessages) {
  DeterministicRandom rng(10);
  const VcParams p = vc_setup("merkle-sha512", 8, rng, "vc");
  const auto msgs = messages(7, rng);
  DeterministicRandom other(99);
  EXPECT_EQ(vc_commit(p, msgs, rng).first, vc_commit(p, msgs, other).first);
}

TEST(Merkle, DeclaredDepthIsBound) {
  DeterministicRandom rng(11);
  const VcParams p = vc_setup("merkle-sha256", 8, rng, "vc");
  const auto msgs = messages(2, rng);
  const auto [c, dec] = vc_commit(p, msgs, rng);
  const Digest root = dec.levels[0][0];
  EXPECT_NE(h(p, Value::tuple({Value::uint(1), Value::bytes(root)})),
            h(p, Value::tuple({Value::uint(2), Value::bytes(root)})));
  Opening o = vc_open(p, dec, 0);
  o.path.push_back(h(p, Value::bottom()));
  EXPECT_FALSE(vc_verify(p, msgs[0], c, o, 0));
}

TEST(Merkle, HidingFlavourNeedsHidingOpening) {
  DeterministicRandom rng(12);
  const VcParams hiding = vc_setup("hiding-hm256", 4, rng, "vc");
  const auto msgs = messages(2, rng);
  const auto [c, dec] = vc_commit(hiding, msgs, rng);
  Opening o = vc_open(hiding, dec, 1);
  ASSERT_TRUE(o.hiding.has_value());
  o.hiding.reset();
  EXPECT_FALSE(vc_verify(hiding, msgs[1], c, o, 1));
  try {
    vc_setup("merkle-md5", 4, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownDescriptor);
  }
}

}  // namespace
}  // namespace elsa
