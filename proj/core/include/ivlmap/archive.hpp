// Copyright 2026 The IVLMap Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ivlmap/instance.hpp"

namespace ivlmap::io {

inline constexpr std::uint32_t kArchiveVersion = 1;

struct Provenance {
  std::uint32_t dataset_hash = 0;
  std::uint32_t config_hash = 0;
  std::string tool_version;
  std::string mask_source;  // "surrogate" or "external"

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct MapArchive {
  instance::IvlMap map;
  Provenance provenance;

  friend bool operator==(const MapArchive&, const MapArchive&) = default;
};

// Layout, little-endian:
//   char[4] "IVLM" | u32 version | u64 compressed size | u32 crc32(compressed) |
//   u64 raw size | zlib stream
// The raw stream is a u64-length-prefixed JSON header (grid, vocabularies,
// records, provenance) followed by the map planes.

std::vector<std::uint8_t> serialize_archive(const MapArchive& archive);
/// Throws FormatError on bad magic, an unsupported version or a checksum
/// mismatch (including truncation).
MapArchive deserialize_archive(std::span<const std::uint8_t> bytes, const std::string& context);
void save_map(const std::filesystem::path& path, const MapArchive& archive);
MapArchive load_map(const std::filesystem::path& path);

}  // namespace ivlmap::io
