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
#include <initializer_list>
#include <string_view>
#include <variant>
#include <vector>

#include "elsa/bytes.hpp"

namespace elsa {

// A value in the canonical serialization: byte strings, unsigned integers,
// the bottom placeholder and ordered tuples of values. Everything that is
// hashed, signed or committed goes through this type.
//
// Wire format: tag byte, 4-byte big-endian payload length, payload.
//   0x00 ByteString  payload = raw bytes
//   0x01 Tuple       payload = concatenated child encodings
//   0x02 UInt        payload = 8-byte big-endian integer
//   0x03 Bottom      payload = empty
class Value {
 public:
  enum class Kind : std::uint8_t { kBytes = 0, kTuple = 1, kUInt = 2, kBottom = 3 };

  Value() : data_(std::monostate{}) {}

  static Value bytes(Bytes b) { return Value(std::move(b)); }
  static Value bytes(ByteView b) { return Value(Bytes(b.begin(), b.end())); }
  static Value str(std::string_view s) { return Value(to_bytes(s)); }
  static Value uint(std::uint64_t v) { return Value(v); }
  static Value bottom() { return Value(); }
  static Value tuple(std::vector<Value> items) { return Value(std::move(items)); }
  static Value tuple(std::initializer_list<Value> items) {
    return Value(std::vector<Value>(items));
  }

  Kind kind() const;
  bool is_bytes() const { return kind() == Kind::kBytes; }
  bool is_tuple() const { return kind() == Kind::kTuple; }
  bool is_uint() const { return kind() == Kind::kUInt; }
  bool is_bottom() const { return kind() == Kind::kBottom; }

  // Typed accessors throw Errc::kDecode on a kind mismatch so that parsing
  // code can treat structurally wrong input as a decode failure.
  const Bytes& as_bytes() const;
  std::string as_string() const { return to_string(as_bytes()); }
  std::uint64_t as_uint() const;
  const std::vector<Value>& items() const;
  std::vector<Value>& items();

  // Tuple element access with arity checking.
  const Value& at(std::size_t i) const;
  // Throws unless this is a tuple with exactly n elements.
  const std::vector<Value>& expect_tuple(std::size_t n) const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  explicit Value(Bytes b) : data_(std::move(b)) {}
  explicit Value(std::vector<Value> t) : data_(std::move(t)) {}
  explicit Value(std::uint64_t v) : data_(v) {}

  std::variant<Bytes, std::vector<Value>, std::uint64_t, std::monostate> data_;
};

Bytes encode(const Value& v);
void encode_into(Bytes& out, const Value& v);
std::size_t encoded_size(const Value& v);

// Parses exactly one value spanning the whole input.
Value decode(ByteView data);

}  // namespace elsa
