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

#include "elsa/bundle.hpp"

#include <fstream>
#include <iterator>

#include "elsa/errors.hpp"
#include "elsa/hash.hpp"

namespace elsa {

namespace {
constexpr std::string_view kMagic = "ELSA";
}  // namespace

Bytes export_bundle(ByteView dat, const EvidenceBundle& evidence) {
  std::vector<Value> items{Value::bytes(sha256(dat)), Value::str(evidence.sig_id), evidence.s};
  for (const auto& e : evidence.entries) items.push_back(e.to_value());
  Bytes out = to_bytes(kMagic);
  out.push_back(kBundleVersion);
  encode_into(out, Value::tuple(std::move(items)));
  return out;
}

BundleFile import_bundle(ByteView file) {
  require(file.size() > kMagic.size() + 1 &&
              std::equal(kMagic.begin(), kMagic.end(), file.begin()),
          Errc::kDecode, "not an evidence bundle");
  require(file[kMagic.size()] == kBundleVersion, Errc::kDecode, "unsupported bundle version");
  const Value v = decode(file.subspan(kMagic.size() + 1));
  const auto& f = v.items();
  require(f.size() >= 3, Errc::kDecode, "bundle too short");
  BundleFile out;
  out.dat_hash = f[0].as_bytes();
  out.evidence.sig_id = f[1].as_string();
  out.evidence.s = f[2];
  for (std::size_t i = 3; i < f.size(); ++i) {
    out.evidence.entries.push_back(EvidenceEntry::from_value(f[i]));
  }
  return out;
}

Bytes read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::kIo, "cannot read " + path.string());
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_binary_file(const std::filesystem::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), Errc::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  require(out.good(), Errc::kIo, "write failed for " + path.string());
}

void write_bundle_file(const std::filesystem::path& path, ByteView dat,
                       const EvidenceBundle& evidence) {
  write_binary_file(path, export_bundle(dat, evidence));
}

BundleFile read_bundle_file(const std::filesystem::path& path) {
  return import_bundle(read_binary_file(path));
}

}  // namespace elsa
