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

#pragma once

#include <cstdint>
#include <vector>

#include "elsa/bytes.hpp"

namespace elsa {

// Binary extension field GF(2)[x] / f(x) with f = x^degree + sum x^t over
// `low_terms` (which must include 0). Elements serialize as degree/8
// big-endian bytes, most significant coefficient first.
class BinaryField {
 public:
  using Element = std::vector<std::uint64_t>;

  BinaryField(unsigned degree, std::vector<unsigned> low_terms);

  unsigned degree() const { return degree_; }
  const std::vector<unsigned>& low_terms() const { return low_terms_; }
  std::size_t element_bytes() const { return degree_ / 8; }

  Element from_bytes(ByteView be) const;
  Bytes to_bytes(const Element& e) const;

  Element mul(const Element& a, const Element& b) const;
  // Big-endian byte interface used by the commitment code.
  Bytes mul_bytes(ByteView a, ByteView b) const;

  // Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for
  // every prime p dividing n.
  bool is_irreducible() const;

 private:
  Element reduce(std::vector<std::uint64_t> wide) const;

  unsigned degree_;
  std::vector<unsigned> low_terms_;
  std::size_t words_;
};

}  // namespace elsa
