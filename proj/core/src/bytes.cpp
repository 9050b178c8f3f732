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

#include "elsa/bytes.hpp"

#include <algorithm>

#include "elsa/errors.hpp"

namespace elsa {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kEncodingOverflow: return "encoding-overflow";
    case Errc::kDecode: return "decode";
    case Errc::kParameter: return "parameter";
    case Errc::kUnknownDescriptor: return "unknown-descriptor";
    case Errc::kKeyExhausted: return "key-exhausted";
    case Errc::kSchemeExpired: return "scheme-expired";
    case Errc::kUnregisteredScheme: return "unregistered-scheme";
    case Errc::kLength: return "length";
    case Errc::kIndexOutOfRange: return "index-out-of-range";
    case Errc::kThreshold: return "threshold";
    case Errc::kEpochMismatch: return "epoch-mismatch";
    case Errc::kDuplicateShare: return "duplicate-share";
    case Errc::kUnavailable: return "unavailable";
    case Errc::kNotFound: return "not-found";
    case Errc::kDuplicateName: return "duplicate-name";
    case Errc::kAlreadyInitialized: return "already-initialized";
    case Errc::kConfig: return "config";
    case Errc::kTransport: return "transport";
    case Errc::kIo: return "io";
  }
  return "unknown";
}

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  require(hex.size() % 2 == 0, Errc::kDecode, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    require(hi >= 0 && lo >= 0, Errc::kDecode, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

bool contains(ByteView haystack, ByteView needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

}  // namespace elsa
