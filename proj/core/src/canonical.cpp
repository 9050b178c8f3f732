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

#include "elsa/canonical.hpp"

#include <limits>

#include "elsa/errors.hpp"

namespace elsa {

namespace {

constexpr std::size_t kHeaderSize = 5;
constexpr std::size_t kMaxPayload = std::numeric_limits<std::uint32_t>::max();
constexpr int kMaxDepth = 64;

Value decode_one(ByteView data, std::size_t& pos, int depth) {
  require(depth <= kMaxDepth, Errc::kDecode, "nesting too deep");
  require(data.size() - pos >= kHeaderSize, Errc::kDecode, "truncated header");
  const std::uint8_t tag = data[pos];
  const std::size_t len = get_be32(data.data() + pos + 1);
  pos += kHeaderSize;
  require(data.size() - pos >= len, Errc::kDecode, "truncated payload");
  const std::size_t end = pos + len;
  switch (tag) {
    case 0x00: {
      Value v = Value::bytes(data.subspan(pos, len));
      pos = end;
      return v;
    }
    case 0x01: {
      std::vector<Value> items;
      while (pos < end) {
        items.push_back(decode_one(data.first(end), pos, depth + 1));
      }
      return Value::tuple(std::move(items));
    }
    case 0x02: {
      require(len == 8, Errc::kDecode, "UInt payload must be 8 bytes");
      std::uint64_t v = get_be64(data.data() + pos);
      pos = end;
      return Value::uint(v);
    }
    case 0x03:
      require(len == 0, Errc::kDecode, "Bottom payload must be empty");
      return Value::bottom();
    default:
      fail(Errc::kDecode, "unknown tag " + std::to_string(tag));
  }
}

}  // namespace

Value::Kind Value::kind() const {
  // Variant alternatives are declared in tag order.
  return static_cast<Kind>(data_.index());
}

const Bytes& Value::as_bytes() const {
  const auto* p = std::get_if<Bytes>(&data_);
  require(p != nullptr, Errc::kDecode, "expected ByteString");
  return *p;
}

std::uint64_t Value::as_uint() const {
  const auto* p = std::get_if<std::uint64_t>(&data_);
  require(p != nullptr, Errc::kDecode, "expected UInt");
  return *p;
}

const std::vector<Value>& Value::items() const {
  const auto* p = std::get_if<std::vector<Value>>(&data_);
  require(p != nullptr, Errc::kDecode, "expected Tuple");
  return *p;
}

std::vector<Value>& Value::items() {
  auto* p = std::get_if<std::vector<Value>>(&data_);
  require(p != nullptr, Errc::kDecode, "expected Tuple");
  return *p;
}

const Value& Value::at(std::size_t i) const {
  const auto& v = items();
  require(i < v.size(), Errc::kDecode, "tuple index out of range");
  return v[i];
}

const std::vector<Value>& Value::expect_tuple(std::size_t n) const {
  const auto& v = items();
  require(v.size() == n, Errc::kDecode,
          "expected tuple of arity " + std::to_string(n) + ", got " +
              std::to_string(v.size()));
  return v;
}

bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }

std::size_t encoded_size(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kBytes: return kHeaderSize + v.as_bytes().size();
    case Value::Kind::kUInt: return kHeaderSize + 8;
    case Value::Kind::kBottom: return kHeaderSize;
    case Value::Kind::kTuple: {
      std::size_t n = kHeaderSize;
      for (const auto& item : v.items()) n += encoded_size(item);
      return n;
    }
  }
  return 0;
}

void encode_into(Bytes& out, const Value& v) {
  out.push_back(static_cast<std::uint8_t>(v.kind()));
  switch (v.kind()) {
    case Value::Kind::kBytes: {
      const Bytes& b = v.as_bytes();
      require(b.size() <= kMaxPayload, Errc::kEncodingOverflow,
              "ByteString longer than 2^32-1 bytes");
      put_be32(out, static_cast<std::uint32_t>(b.size()));
      append(out, b);
      return;
    }
    case Value::Kind::kUInt:
      put_be32(out, 8);
      put_be64(out, v.as_uint());
      return;
    case Value::Kind::kBottom:
      put_be32(out, 0);
      return;
    case Value::Kind::kTuple: {
      const std::size_t len_at = out.size();
      put_be32(out, 0);
      for (const auto& item : v.items()) encode_into(out, item);
      const std::size_t len = out.size() - len_at - 4;
      require(len <= kMaxPayload, Errc::kEncodingOverflow,
              "Tuple payload longer than 2^32-1 bytes");
      for (int i = 0; i < 4; ++i) {
        out[len_at + i] = static_cast<std::uint8_t>(len >> (24 - 8 * i));
      }
      return;
    }
  }
}

Bytes encode(const Value& v) {
  Bytes out;
  out.reserve(encoded_size(v));
  encode_into(out, v);
  return out;
}

Value decode(ByteView data) {
  std::size_t pos = 0;
  Value v = decode_one(data, pos, 0);
  require(pos == data.size(), Errc::kDecode, "trailing bytes after value");
  return v;
}

}  // namespace elsa
