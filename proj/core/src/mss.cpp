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

// Few-time hash-based signatures: Winternitz one-time keys (w = 16) whose
// compressed public keys are the leaves of a Merkle tree. The public key is
// (public seed, root); a signature carries the leaf index, the one-time
// signature and the authentication path.

#include <array>
#include <cstring>
#include <mutex>

#include "elsa/errors.hpp"
#include "elsa/hash.hpp"
#include "elsa/signature.hpp"

namespace elsa {

namespace {

constexpr std::size_t kPubSeedSize = 16;
constexpr unsigned kW = 16;
constexpr std::size_t kChecksumDigits = 3;

constexpr std::uint8_t kDomainLeaf = 0x02;
constexpr std::uint8_t kDomainNode = 0x03;
constexpr std::uint8_t kDomainMessage = 0x04;

struct Params {
  HashAlgorithm algo;
  unsigned height;
  std::size_t n;

  std::size_t msg_digits() const { return 2 * n; }
  std::size_t chains() const { return msg_digits() + kChecksumDigits; }
  std::uint64_t capacity() const { return std::uint64_t{1} << height; }
};

class Hasher {
 public:
  explicit Hasher(const Params& p) : p_(p) {}

  // out = Hash(data) truncated to n bytes.
  void operator()(ByteView data, std::uint8_t* out) const {
    std::uint8_t full[64];
    raw_hash_into(p_.algo, data, full);
    std::memcpy(out, full, p_.n);
  }

 private:
  const Params& p_;
};

void put_addr(std::uint8_t* p, std::uint32_t leaf, std::uint16_t chain) {
  p[0] = static_cast<std::uint8_t>(leaf >> 24);
  p[1] = static_cast<std::uint8_t>(leaf >> 16);
  p[2] = static_cast<std::uint8_t>(leaf >> 8);
  p[3] = static_cast<std::uint8_t>(leaf);
  p[4] = static_cast<std::uint8_t>(chain >> 8);
  p[5] = static_cast<std::uint8_t>(chain);
}

// Advances x in place from step `from` to step `to` along one chain. Input
// layout x || pub_seed || leaf(4) || chain(2) || step(1) fits one compression
// block for both n = 32 and n = 64.
void chain(const Params& p, const std::uint8_t* pub_seed, std::uint32_t leaf,
           std::uint16_t chain_idx, unsigned from, unsigned to, std::uint8_t* x) {
  Hasher h(p);
  std::array<std::uint8_t, 64 + kPubSeedSize + 7> buf{};
  const std::size_t len = p.n + kPubSeedSize + 7;
  std::memcpy(buf.data() + p.n, pub_seed, kPubSeedSize);
  put_addr(buf.data() + p.n + kPubSeedSize, leaf, chain_idx);
  for (unsigned step = from; step < to; ++step) {
    std::memcpy(buf.data(), x, p.n);
    buf[len - 1] = static_cast<std::uint8_t>(step);
    h(ByteView(buf.data(), len), x);
  }
}

void secret_element(const Params& p, const Bytes& seed, std::uint32_t leaf,
                    std::uint16_t chain_idx, std::uint8_t* out) {
  Bytes buf = seed;
  buf.push_back(0x00);
  std::uint8_t addr[6];
  put_addr(addr, leaf, chain_idx);
  buf.insert(buf.end(), addr, addr + 6);
  Hasher{p}(buf, out);
}

Bytes compress_leaf(const Params& p, const std::uint8_t* pub_seed, std::uint32_t leaf,
                    ByteView chain_ends) {
  Bytes buf;
  buf.push_back(kDomainLeaf);
  buf.insert(buf.end(), pub_seed, pub_seed + kPubSeedSize);
  put_be32(buf, leaf);
  append(buf, chain_ends);
  Bytes out(p.n);
  Hasher{p}(buf, out.data());
  return out;
}

Bytes tree_node(const Params& p, const std::uint8_t* pub_seed, std::uint32_t level,
                std::uint32_t index, ByteView left, ByteView right) {
  Bytes buf;
  buf.push_back(kDomainNode);
  buf.insert(buf.end(), pub_seed, pub_seed + kPubSeedSize);
  put_be32(buf, level);
  put_be32(buf, index);
  append(buf, left);
  append(buf, right);
  Bytes out(p.n);
  Hasher{p}(buf, out.data());
  return out;
}

std::vector<unsigned> digits(const Params& p, const std::uint8_t* pub_seed, ByteView root,
                             const Value& m) {
  Bytes buf;
  buf.push_back(kDomainMessage);
  buf.insert(buf.end(), pub_seed, pub_seed + kPubSeedSize);
  append(buf, root);
  encode_into(buf, m);
  Bytes md(p.n);
  Hasher{p}(buf, md.data());

  std::vector<unsigned> d;
  d.reserve(p.chains());
  unsigned checksum = 0;
  for (std::uint8_t b : md) {
    d.push_back(b >> 4);
    d.push_back(b & 0x0f);
  }
  for (unsigned v : d) checksum += (kW - 1) - v;
  d.push_back((checksum >> 8) & 0x0f);
  d.push_back((checksum >> 4) & 0x0f);
  d.push_back(checksum & 0x0f);
  return d;
}

class MssKey final : public SigningKey {
 public:
  MssKey(std::string descriptor, Params p, Bytes seed, Bytes pub_seed, std::uint64_t next)
      : descriptor_(std::move(descriptor)),
        p_(p),
        seed_(std::move(seed)),
        pub_seed_(std::move(pub_seed)),
        next_(next) {
    require(seed_.size() == p_.n && pub_seed_.size() == kPubSeedSize, Errc::kParameter,
            "malformed mss secret key");
    require(next_ <= p_.capacity(), Errc::kParameter, "mss counter beyond capacity");
    build_tree();
  }

  const std::string& descriptor() const override { return descriptor_; }

  Bytes public_key() const override {
    Bytes pk = pub_seed_;
    append(pk, root());
    return pk;
  }

  Bytes export_secret() const override {
    std::lock_guard lock(mu_);
    return encode(Value::tuple({Value::bytes(seed_), Value::bytes(pub_seed_),
                                Value::uint(next_)}));
  }

  std::uint64_t remaining() const override {
    std::lock_guard lock(mu_);
    return p_.capacity() - next_;
  }

  Bytes sign(const Value& m) override {
    std::lock_guard lock(mu_);
    require(next_ < p_.capacity(), Errc::kKeyExhausted,
            descriptor_ + " key has produced all " + std::to_string(p_.capacity()) +
                " signatures");
    const auto leaf = static_cast<std::uint32_t>(next_++);
    const std::vector<unsigned> d = digits(p_, pub_seed_.data(), root(), m);

    Bytes ots(p_.chains() * p_.n);
    for (std::size_t c = 0; c < p_.chains(); ++c) {
      std::uint8_t* x = ots.data() + c * p_.n;
      secret_element(p_, seed_, leaf, static_cast<std::uint16_t>(c), x);
      chain(p_, pub_seed_.data(), leaf, static_cast<std::uint16_t>(c), 0, d[c], x);
    }
    Bytes auth;
    std::uint32_t idx = leaf;
    for (unsigned level = 0; level < p_.height; ++level) {
      append(auth, levels_[level][idx ^ 1u]);
      idx >>= 1;
    }
    return encode(Value::tuple({Value::uint(leaf), Value::bytes(std::move(ots)),
                                Value::bytes(std::move(auth))}));
  }

 private:
  const Bytes& root() const { return levels_[p_.height][0]; }

  void build_tree() {
    levels_.assign(p_.height + 1, {});
    const std::uint64_t leaves = p_.capacity();
    levels_[0].reserve(leaves);
    Bytes ends(p_.chains() * p_.n);
    for (std::uint64_t leaf = 0; leaf < leaves; ++leaf) {
      const auto l = static_cast<std::uint32_t>(leaf);
      for (std::size_t c = 0; c < p_.chains(); ++c) {
        std::uint8_t* x = ends.data() + c * p_.n;
        secret_element(p_, seed_, l, static_cast<std::uint16_t>(c), x);
        chain(p_, pub_seed_.data(), l, static_cast<std::uint16_t>(c), 0, kW - 1, x);
      }
      levels_[0].push_back(compress_leaf(p_, pub_seed_.data(), l, ends));
    }
    for (unsigned level = 1; level <= p_.height; ++level) {
      const auto& below = levels_[level - 1];
      for (std::size_t j = 0; j < below.size() / 2; ++j) {
        levels_[level].push_back(tree_node(p_, pub_seed_.data(), level,
                                           static_cast<std::uint32_t>(j), below[2 * j],
                                           below[2 * j + 1]));
      }
    }
  }

  std::string descriptor_;
  Params p_;
  Bytes seed_;
  Bytes pub_seed_;
  mutable std::mutex mu_;
  std::uint64_t next_;
  std::vector<std::vector<Bytes>> levels_;
};

Params make_params(HashAlgorithm algo, unsigned height) {
  return Params{algo, height, raw_digest_size(algo)};
}

}  // namespace

std::unique_ptr<SigningKey> mss_setup(std::string_view descriptor, HashAlgorithm algo,
                                      unsigned height, RandomSource& rng) {
  const Params p = make_params(algo, height);
  Bytes seed = rng.bytes(p.n);
  Bytes pub_seed = rng.bytes(kPubSeedSize);
  return std::make_unique<MssKey>(std::string(descriptor), p, std::move(seed),
                                  std::move(pub_seed), 0);
}

std::unique_ptr<SigningKey> mss_import(std::string_view descriptor, HashAlgorithm algo,
                                       unsigned height, ByteView secret) {
  const Params p = make_params(algo, height);
  const Value v = decode(secret);
  const auto& f = v.expect_tuple(3);
  return std::make_unique<MssKey>(std::string(descriptor), p, f[0].as_bytes(),
                                  f[1].as_bytes(), f[2].as_uint());
}

bool mss_verify(HashAlgorithm algo, unsigned height, ByteView public_key, const Value& m,
                ByteView signature) {
  const Params p = make_params(algo, height);
  if (public_key.size() != kPubSeedSize + p.n) return false;
  const std::uint8_t* pub_seed = public_key.data();
  const ByteView root = public_key.subspan(kPubSeedSize);

  const Value sig = decode(signature);
  const auto& f = sig.expect_tuple(3);
  const std::uint64_t leaf64 = f[0].as_uint();
  const Bytes& ots = f[1].as_bytes();
  const Bytes& auth = f[2].as_bytes();
  if (leaf64 >= p.capacity() || ots.size() != p.chains() * p.n ||
      auth.size() != p.height * p.n) {
    return false;
  }
  const auto leaf = static_cast<std::uint32_t>(leaf64);

  const std::vector<unsigned> d = digits(p, pub_seed, root, m);
  Bytes ends = ots;
  for (std::size_t c = 0; c < p.chains(); ++c) {
    chain(p, pub_seed, leaf, static_cast<std::uint16_t>(c), d[c], kW - 1,
          ends.data() + c * p.n);
  }
  Bytes node = compress_leaf(p, pub_seed, leaf, ends);
  std::uint32_t idx = leaf;
  for (unsigned level = 0; level < p.height; ++level) {
    ByteView sibling(auth.data() + level * p.n, p.n);
    node = (idx & 1u) == 0 ? tree_node(p, pub_seed, level + 1, idx >> 1, node, sibling)
                           : tree_node(p, pub_seed, level + 1, idx >> 1, sibling, node);
    idx >>= 1;
  }
  return std::equal(node.begin(), node.end(), root.begin(), root.end());
}

}  // namespace elsa
