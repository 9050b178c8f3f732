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

#include "elsa/shamir.hpp"

#include <array>
#include <set>

#include "elsa/errors.hpp"

namespace elsa {

namespace gf256 {

namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<std::uint8_t, 256> log{};

  Tables() {
    // 0x03 generates the multiplicative group under the AES polynomial.
    std::uint8_t v = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = v;
      log[v] = static_cast<std::uint8_t>(i);
      std::uint8_t doubled = static_cast<std::uint8_t>(v << 1) ^ ((v & 0x80) ? 0x1b : 0x00);
      v = doubled ^ v;
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  const auto& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
  require(a != 0, Errc::kParameter, "inverse of zero in GF(256)");
  const auto& t = tables();
  return t.exp[255 - t.log[a]];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) { return mul(a, inv(b)); }

}  // namespace gf256

namespace {

void check_policy(std::size_t n, std::size_t t) {
  require(t >= 1 && t <= n, Errc::kThreshold,
          "need 1 <= T <= N, got T=" + std::to_string(t) + " N=" + std::to_string(n));
  require(n <= 255, Errc::kThreshold, "at most 255 shareholders");
}

// Evaluations at x = 1..n of polynomials whose constant terms are `constant`
// (one polynomial per byte) and whose other coefficients come from rng.
std::vector<Bytes> evaluate(ByteView constant, std::size_t n, std::size_t t,
                            RandomSource& rng) {
  std::vector<Bytes> ys(n, Bytes(constant.size()));
  Bytes coeffs(t - 1);
  for (std::size_t pos = 0; pos < constant.size(); ++pos) {
    rng.fill(coeffs);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<std::uint8_t>(i + 1);
      // Horner from the highest coefficient down.
      std::uint8_t acc = 0;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = gf256::mul(acc, x) ^ coeffs[k];
      ys[i][pos] = gf256::mul(acc, x) ^ constant[pos];
    }
  }
  return ys;
}

}  // namespace

std::vector<Share> share(ByteView secret, std::size_t n, std::size_t t, RandomSource& rng,
                         const std::string& name, std::uint64_t epoch) {
  check_policy(n, t);
  std::vector<Bytes> ys = evaluate(secret, n, t, rng);
  std::vector<Share> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Share{static_cast<std::uint8_t>(i + 1), std::move(ys[i]), name, epoch});
  }
  return out;
}

std::vector<Bytes> zero_sharing(std::size_t length, std::size_t n, std::size_t t,
                                RandomSource& rng) {
  check_policy(n, t);
  return evaluate(Bytes(length, 0), n, t, rng);
}

namespace detail {

Bytes interpolate_at_zero(std::span<const Share> shares) {
  const std::size_t len = shares.empty() ? 0 : shares[0].y.size();
  Bytes out(len, 0);
  for (std::size_t i = 0; i < shares.size(); ++i) {
    // Lagrange basis at 0: prod_{j != i} x_j / (x_j - x_i); subtraction is xor.
    std::uint8_t basis = 1;
    for (std::size_t j = 0; j < shares.size(); ++j) {
      if (i == j) continue;
      basis = gf256::mul(basis, gf256::div(shares[j].x, shares[j].x ^ shares[i].x));
    }
    for (std::size_t pos = 0; pos < len; ++pos) out[pos] ^= gf256::mul(basis, shares[i].y[pos]);
  }
  return out;
}

}  // namespace detail

Bytes reconstruct(std::span<const Share> shares, std::size_t t) {
  require(t >= 1, Errc::kThreshold, "threshold must be >= 1");
  require(shares.size() >= t, Errc::kThreshold,
          "have " + std::to_string(shares.size()) + " shares, need " + std::to_string(t));
  const auto used = shares.first(t);
  std::set<std::uint8_t> xs;
  for (const auto& s : used) {
    require(s.epoch == used[0].epoch, Errc::kEpochMismatch,
            "shares from epochs " + std::to_string(used[0].epoch) + " and " +
                std::to_string(s.epoch));
    require(s.name == used[0].name, Errc::kParameter, "shares of different items");
    require(s.y.size() == used[0].y.size(), Errc::kParameter, "share lengths differ");
    require(s.x != 0, Errc::kParameter, "share at x = 0");
    require(xs.insert(s.x).second, Errc::kDuplicateShare,
            "duplicate share x=" + std::to_string(s.x));
  }
  return detail::interpolate_at_zero(used);
}

}  // namespace elsa
