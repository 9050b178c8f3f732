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

#include "elsa/gf2n.hpp"

#include <algorithm>
#include <bit>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

using Poly = std::vector<std::uint64_t>;

bool get_bit(const Poly& p, std::size_t i) { return (p[i / 64] >> (i % 64)) & 1u; }
void flip_bit(Poly& p, std::size_t i) { p[i / 64] ^= std::uint64_t{1} << (i % 64); }

long poly_degree(const Poly& p) {
  for (std::size_t w = p.size(); w-- > 0;) {
    if (p[w] != 0) return static_cast<long>(w * 64 + 63 - std::countl_zero(p[w]));
  }
  return -1;
}

// a ^= b << shift, growing a as needed.
void xor_shifted(Poly& a, const Poly& b, std::size_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  if (a.size() < b.size() + ws + 1) a.resize(b.size() + ws + 1, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i + ws] ^= b[i] << bs;
    if (bs != 0) a[i + ws + 1] ^= b[i] >> (64 - bs);
  }
}

Poly poly_mod(Poly a, const Poly& m) {
  const long dm = poly_degree(m);
  for (long da = poly_degree(a); da >= dm; da = poly_degree(a)) {
    xor_shifted(a, m, static_cast<std::size_t>(da - dm));
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  while (poly_degree(b) >= 0) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

BinaryField::BinaryField(unsigned degree, std::vector<unsigned> low_terms)
    : degree_(degree), low_terms_(std::move(low_terms)), words_((degree + 63) / 64) {
  require(degree_ >= 8 && degree_ % 8 == 0, Errc::kParameter,
          "field degree must be a positive multiple of 8");
  require(std::find(low_terms_.begin(), low_terms_.end(), 0u) != low_terms_.end(),
          Errc::kParameter, "field polynomial needs a constant term");
  for (unsigned t : low_terms_) {
    require(t < degree_, Errc::kParameter, "field polynomial term above degree");
  }
}

BinaryField::Element BinaryField::from_bytes(ByteView be) const {
  require(be.size() == element_bytes(), Errc::kParameter, "field element size mismatch");
  Element e(words_, 0);
  const std::size_t n = be.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = 8 * (n - 1 - i);
    e[bit / 64] |= std::uint64_t{be[i]} << (bit % 64);
  }
  return e;
}

Bytes BinaryField::to_bytes(const Element& e) const {
  const std::size_t n = element_bytes();
  Bytes out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = 8 * (n - 1 - i);
    out[i] = static_cast<std::uint8_t>(e[bit / 64] >> (bit % 64));
  }
  return out;
}

BinaryField::Element BinaryField::reduce(std::vector<std::uint64_t> wide) const {
  for (std::size_t i = wide.size() * 64; i-- > degree_;) {
    if (!get_bit(wide, i)) continue;
    flip_bit(wide, i);
    for (unsigned t : low_terms_) flip_bit(wide, i - degree_ + t);
  }
  wide.resize(words_);
  return wide;
}

BinaryField::Element BinaryField::mul(const Element& a, const Element& b) const {
  // Comb multiplication: shifted copies of a for each bit offset in a word.
  std::vector<Poly> shifted(64, Poly(words_ + 1, 0));
  for (unsigned k = 0; k < 64; ++k) {
    for (std::size_t i = 0; i < words_; ++i) {
      shifted[k][i] ^= a[i] << k;
      if (k != 0) shifted[k][i + 1] ^= a[i] >> (64 - k);
    }
  }
  Poly wide(2 * words_ + 1, 0);
  for (std::size_t j = 0; j < words_; ++j) {
    std::uint64_t w = b[j];
    while (w != 0) {
      const unsigned k = static_cast<unsigned>(std::countr_zero(w));
      w &= w - 1;
      const Poly& s = shifted[k];
      for (std::size_t i = 0; i <= words_; ++i) wide[i + j] ^= s[i];
    }
  }
  return reduce(std::move(wide));
}

Bytes BinaryField::mul_bytes(ByteView a, ByteView b) const {
  return to_bytes(mul(from_bytes(a), from_bytes(b)));
}

bool BinaryField::is_irreducible() const {
  Poly f(words_ + 1, 0);
  flip_bit(f, degree_);
  for (unsigned t : low_terms_) flip_bit(f, t);

  Element x(words_, 0);
  x[0] = 2;

  // powers[k] = x^(2^k) mod f.
  std::vector<Element> powers{x};
  for (unsigned k = 1; k <= degree_; ++k) powers.push_back(mul(powers.back(), powers.back()));
  if (powers[degree_] != x) return false;

  for (unsigned p : prime_factors(degree_)) {
    Poly g = powers[degree_ / p];
    g[0] ^= 2;  // subtract x
    Poly d = poly_gcd(f, g);
    if (poly_degree(d) != 0) return false;
  }
  return true;
}

}  // namespace elsa
