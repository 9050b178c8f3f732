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

#include "elsa/vector_commitment.hpp"

#include <array>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

struct Preset {
  std::string_view descriptor;
  std::string_view tree_hash;
  std::string_view hiding;  // empty for plain Merkle
};

constexpr std::array<Preset, 5> kPresets = {{
    {"merkle-sha256", "sha256", ""},
    {"merkle-sha512", "sha512", ""},
    {"hiding-hm256", "sha256", "hm-256"},
    {"hiding-hm512", "sha512", "hm-512"},
    {"hiding-toy4", "sha256", "hm-toy4"},
}};

const Preset& preset(std::string_view descriptor) {
  for (const auto& p : kPresets) {
    if (p.descriptor == descriptor) return p;
  }
  fail(Errc::kUnknownDescriptor, "vector commitment '" + std::string(descriptor) + "'");
}

Digest node_hash(const VcParams& p, const Digest& left, const Digest& right) {
  return keyed_hash(p.hash(), p.tree_key, Value::tuple({Value::bytes(left), Value::bytes(right)}));
}

Digest root_commitment(const VcParams& p, std::uint32_t depth, const Digest& root) {
  return keyed_hash(p.hash(), p.tree_key, Value::tuple({Value::uint(depth), Value::bytes(root)}));
}

TreeDecommitment merkle_tree(const VcParams& p, std::span<const Value> leaves) {
  TreeDecommitment d;
  d.leaf_count = leaves.size();
  d.depth = tree_depth(leaves.size());
  d.levels.resize(d.depth + 1);
  auto& bottom = d.levels[d.depth];
  const std::uint64_t width = std::uint64_t{1} << d.depth;
  bottom.reserve(width);
  for (const auto& m : leaves) bottom.push_back(keyed_hash(p.hash(), p.tree_key, m));
  const Digest pad = keyed_hash(p.hash(), p.tree_key, Value::bottom());
  while (bottom.size() < width) bottom.push_back(pad);
  for (std::uint32_t level = d.depth; level-- > 0;) {
    const auto& below = d.levels[level + 1];
    auto& row = d.levels[level];
    row.reserve(below.size() / 2);
    for (std::size_t j = 0; j < below.size() / 2; ++j) {
      row.push_back(node_hash(p, below[2 * j], below[2 * j + 1]));
    }
  }
  return d;
}

bool merkle_verify(const VcParams& p, const Value& m, const Digest& c,
                   const std::vector<Digest>& path, std::uint64_t index) {
  const std::size_t depth = path.size();
  if (depth >= 64 || (index >> depth) != 0) return false;
  Digest h = keyed_hash(p.hash(), p.tree_key, m);
  std::uint64_t a = index;
  for (const Digest& g : path) {
    h = (a % 2 == 0) ? node_hash(p, h, g) : node_hash(p, g, h);
    a /= 2;
  }
  return root_commitment(p, static_cast<std::uint32_t>(depth), h) == c;
}

}  // namespace

std::uint32_t tree_depth(std::uint64_t n) {
  std::uint32_t l = 0;
  while (l < 64 && (std::uint64_t{1} << l) < n) ++l;
  return l;
}

Value VcParams::to_value() const {
  return Value::tuple({Value::str(descriptor), Value::uint(max_length), Value::bytes(tree_key.key),
                       hiding ? hiding->to_value() : Value::bottom()});
}

VcParams VcParams::from_value(std::string scheme_id, const Value& v) {
  const auto& f = v.expect_tuple(4);
  const Preset& pre = preset(f[0].as_string());
  VcParams p;
  p.scheme_id = std::move(scheme_id);
  p.descriptor = std::string(pre.descriptor);
  p.hash_name = std::string(pre.tree_hash);
  p.max_length = f[1].as_uint();
  require(p.max_length >= 1, Errc::kLength, "vector length bound must be >= 1");
  p.tree_key = HashKey{f[2].as_bytes()};
  require(p.tree_key.key.size() == p.hash().key_size, Errc::kParameter, "tree key length");
  if (pre.hiding.empty()) {
    require(f[3].is_bottom(), Errc::kParameter, "unexpected hiding parameters");
  } else {
    p.hiding = HidingParams::from_value(f[3]);
    require(p.hiding->descriptor == pre.hiding, Errc::kParameter, "hiding scheme mismatch");
  }
  return p;
}

Value Opening::to_value() const {
  std::vector<Value> digests;
  digests.reserve(path.size());
  for (const auto& g : path) digests.push_back(Value::bytes(g));
  std::vector<Value> f{Value::uint(index), Value::tuple(std::move(digests))};
  if (hiding) {
    f.push_back(
        Value::tuple({hiding->commitment.to_value(), hiding->decommitment.to_value()}));
  }
  return Value::tuple(std::move(f));
}

Opening Opening::from_value(const Value& v) {
  const auto& f = v.items();
  require(f.size() == 2 || f.size() == 3, Errc::kDecode, "opening arity");
  Opening o;
  o.index = f[0].as_uint();
  for (const auto& g : f[1].items()) o.path.push_back(g.as_bytes());
  if (f.size() == 3) {
    const auto& h = f[2].expect_tuple(2);
    o.hiding = HidingOpening{HidingCommitment::from_value(h[0]),
                             HidingDecommitment::from_value(h[1])};
  }
  return o;
}

VcParams vc_setup(std::string_view descriptor, std::uint64_t max_length, RandomSource& rng,
                  std::string scheme_id) {
  const Preset& pre = preset(descriptor);
  require(max_length >= 1, Errc::kLength, "vector length bound must be >= 1");
  VcParams p;
  p.scheme_id = std::move(scheme_id);
  p.descriptor = std::string(pre.descriptor);
  p.hash_name = std::string(pre.tree_hash);
  p.max_length = max_length;
  p.tree_key = hash_keygen(p.hash(), rng);
  if (!pre.hiding.empty()) p.hiding = hc_setup(pre.hiding, rng);
  return p;
}

std::pair<VectorCommitment, TreeDecommitment> vc_commit(const VcParams& params,
                                                        std::span<const Value> messages,
                                                        RandomSource& rng) {
  require(!messages.empty() && messages.size() <= params.max_length, Errc::kLength,
          "vector of " + std::to_string(messages.size()) + " messages, bound " +
              std::to_string(params.max_length));
  TreeDecommitment d;
  if (params.hiding) {
    std::vector<HidingOpening> pairs;
    std::vector<Value> leaves;
    pairs.reserve(messages.size());
    leaves.reserve(messages.size());
    for (const auto& m : messages) {
      auto [hc, hd] = hc_commit(*params.hiding, m, rng);
      leaves.push_back(hc.to_value());
      pairs.push_back({std::move(hc), std::move(hd)});
    }
    d = merkle_tree(params, leaves);
    d.hiding = std::move(pairs);
  } else {
    d = merkle_tree(params, messages);
  }
  VectorCommitment c{params.scheme_id, root_commitment(params, d.depth, d.levels[0][0])};
  return {std::move(c), std::move(d)};
}

Opening vc_open(const VcParams& params, const TreeDecommitment& decommitment,
                std::uint64_t index) {
  require(index < decommitment.leaf_count, Errc::kIndexOutOfRange,
          "open index " + std::to_string(index) + " of " +
              std::to_string(decommitment.leaf_count));
  Opening o;
  o.index = index;
  std::uint64_t a = index;
  for (std::uint32_t level = decommitment.depth; level >= 1; --level) {
    o.path.push_back(decommitment.levels[level][a ^ 1u]);
    a /= 2;
  }
  if (params.hiding) {
    require(decommitment.hiding.size() == decommitment.leaf_count, Errc::kParameter,
            "decommitment lacks hiding openings");
    o.hiding = decommitment.hiding[index];
  }
  return o;
}

bool vc_verify(const VcParams& params, const Value& m, const VectorCommitment& c,
               const Opening& d, std::uint64_t index) {
  try {
    if (d.index != index || index >= params.max_length) return false;
    if (params.hiding.has_value() != d.hiding.has_value()) return false;
    if (params.hiding) {
      if (!hc_verify(*params.hiding, m, d.hiding->commitment, d.hiding->decommitment)) {
        return false;
      }
      return merkle_verify(params, d.hiding->commitment.to_value(), c.c, d.path, index);
    }
    return merkle_verify(params, m, c.c, d.path, index);
  } catch (const Error&) {
    return false;
  }
}

void vc_register(PkiRegistry& pki, const VcParams& params, Time valid_from, Time t_b) {
  pki.add(SchemeInstance{params.scheme_id, SchemeKind::kVectorCommitment, params.descriptor,
                         encode(params.to_value()), valid_from, t_b});
}

VcParams vc_params_from_pki(const PkiRegistry& pki, std::string_view scheme_id) {
  const SchemeInstance inst = pki.get(scheme_id);
  require(inst.kind == SchemeKind::kVectorCommitment, Errc::kParameter,
          std::string(scheme_id) + " is not a vector commitment");
  VcParams p = VcParams::from_value(inst.scheme_id, decode(inst.public_params));
  require(p.descriptor == inst.descriptor, Errc::kParameter, "descriptor mismatch");
  return p;
}

}  // namespace elsa
