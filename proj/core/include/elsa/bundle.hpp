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

#include <filesystem>

#include "elsa/archive.hpp"

namespace elsa {

// Exported evidence: "ELSA", version byte 0x01, then the canonical encoding
// of Tuple[Bytes(sha256(dat)), Str(sig_id), s, entries...].
inline constexpr std::uint8_t kBundleVersion = 0x01;

struct BundleFile {
  Bytes dat_hash;
  EvidenceBundle evidence;
};

Bytes export_bundle(ByteView dat, const EvidenceBundle& evidence);
// Throws Errc::kDecode on bad magic, version or structure.
BundleFile import_bundle(ByteView file);

void write_bundle_file(const std::filesystem::path& path, ByteView dat,
                       const EvidenceBundle& evidence);
BundleFile read_bundle_file(const std::filesystem::path& path);

Bytes read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, ByteView data);

}  // namespace elsa
