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

#include "elsa/hiding_commitment.hpp"

#include <array>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

struct Preset {
  std::string_view descriptor;
  std::string_view hash;
  unsigned ell;
  unsigned degree;
  std::array<unsigned, 4> low_terms;
};

// Low-weight irreducible pentanomials from published tables; a unit test
// re-checks irreducibility.
constexpr std::array<Preset, 3> kPresets = {{
    {"hm-256", "sha256", 256, 1024, {19, 6, 1, 0}},
    {"hm-512", "sha512", 512, 2048, {19, 14, 13, 0}},
    {"hm-toy4", "toy8", 4, 16, {5, 3, 1, 0}},
}};

const Preset& preset(std::string_view descriptor) {
  for (const auto& p : kPresets) {
    if (p.descriptor == descriptor) return p;
  }
  fail(Errc::kUnknownDescriptor, "hiding commitment '" + std::string(descriptor) + "'");
}

BinaryField make_field(const Preset& p) {
  return BinaryField(p.degree, {p.low_terms.begin(), p.low_terms.end()});
}

// mu for a message / y for a witness.
Bytes truncated_hash(const HidingParams& params, const Value& v) {
  return leading_bits(keyed_hash(params.hash(), params.key, v), params.ell);
}

}  // namespace

Bytes leading_bits(ByteView data, unsigned bits) {
  require(data.size() * 8 >= bits, Errc::kParameter, "not enough bits");
  Bytes out(data.begin(), data.begin() + (bits + 7) / 8);
  if (bits % 8 != 0) out.back() &= static_cast<std::uint8_t>(0xff << (8 - bits % 8));
  return out;
}

Value HidingParams::to_value() const {
  std::vector<Value> poly{Value::uint(field.degree())};
  for (unsigned t : field.low_terms()) poly.push_back(Value::uint(t));
  return Value::tuple({Value::str(descriptor), Value::uint(ell), Value::tuple(std::move(poly)),
                       Value::bytes(key.key)});
}

HidingParams HidingParams::from_value(const Value& v) {
  const auto& f = v.expect_tuple(4);
  HidingParams p;
  const Preset& pre = preset(f[0].as_string());
  p.descriptor = std::string(pre.descriptor);
  p.hash_name = std::string(pre.hash);
  p.ell = pre.ell;
  p.field = make_field(pre);
  require(f[1].as_uint() == pre.ell, Errc::kParameter, "hiding params: ell mismatch");
  const auto& poly = f[2].items();
  require(poly.size() == pre.low_terms.size() + 1 && poly[0].as_uint() == pre.degree,
          Errc::kParameter, "hiding params: field mismatch");
  for (std::size_t i = 0; i < pre.low_terms.size(); ++i) {
    require(poly[i + 1].as_uint() == pre.low_terms[i], Errc::kParameter,
            "hiding params: field polynomial mismatch");
  }
  p.key = HashKey{f[3].as_bytes()};
  require(p.key.key.size() == p.hash().key_size, Errc::kParameter,
          "hiding params: key length");
  return p;
}

Value HidingCommitment::to_value() const {
  return Value::tuple({Value::bytes(y), Value::bytes(a), Value::bytes(b)});
}

HidingCommitment HidingCommitment::from_value(const Value& v) {
  const auto& f = v.expect_tuple(3);
  return {f[0].as_bytes(), f[1].as_bytes(), f[2].as_bytes()};
}

HidingParams hc_setup(std::string_view descriptor, RandomSource& rng) {
  const Preset& pre = preset(descriptor);
  HidingParams p;
  p.descriptor = std::string(pre.descriptor);
  p.hash_name = std::string(pre.hash);
  p.ell = pre.ell;
  p.field = make_field(pre);
  p.key = hash_keygen(p.hash(), rng);
  return p;
}

std::pair<HidingCommitment, HidingDecommitment> hc_commit(const HidingParams& params,
                                                          const Value& m, RandomSource& rng) {
  const std::size_t width = params.field.element_bytes();
  const Bytes mu = truncated_hash(params, m);

  HidingDecommitment d{rng.bytes(width)};
  HidingCommitment c;
  c.a = rng.bytes(width);
  c.b = rng.bytes(width);

  // Overwrite the leading ell bits of b with msb(a*x) xor mu.
  const Bytes ax = params.field.mul_bytes(c.a, d.x);
  const Bytes top = leading_bits(ax, params.ell);
  const std::size_t full = params.ell / 8;
  for (std::size_t i = 0; i < full; ++i) c.b[i] = top[i] ^ mu[i];
  if (params.ell % 8 != 0) {
    const auto mask = static_cast<std::uint8_t>(0xff << (8 - params.ell % 8));
    c.b[full] = static_cast<std::uint8_t>((c.b[full] & ~mask) | ((top[full] ^ mu[full]) & mask));
  }
  c.y = truncated_hash(params, Value::bytes(d.x));
  return {std::move(c), std::move(d)};
}

bool hc_verify(const HidingParams& params, const Value& m, const HidingCommitment& c,
               const HidingDecommitment& d) {
  const std::size_t width = params.field.element_bytes();
  if (d.x.size() != width || c.a.size() != width || c.b.size() != width ||
      c.y.size() != (params.ell + 7) / 8) {
    return false;
  }
  if (truncated_hash(params, Value::bytes(d.x)) != c.y) return false;
  Bytes h = params.field.mul_bytes(c.a, d.x);
  for (std::size_t i = 0; i < width; ++i) h[i] ^= c.b[i];
  return leading_bits(h, params.ell) == truncated_hash(params, m);
}

}  // namespace elsa
