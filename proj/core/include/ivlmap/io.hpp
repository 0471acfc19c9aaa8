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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ivlmap/geometry.hpp"
#include "ivlmap/grid.hpp"
#include "ivlmap/instance.hpp"
#include "ivlmap/mapping.hpp"
#include "ivlmap/scenegen.hpp"
#include "ivlmap/vocab.hpp"

namespace ivlmap::io {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path);
void write_file(const fs::path& path, std::span<const std::uint8_t> bytes);
std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t seed = 0);

// ---- embedding tensors ----------------------------------------------------
//
// Layout, little-endian:
//   char[4] "IVLE" | u32 version (1) | u32 rows | u32 cols | u32 channels |
//   u32 dtype (1 = float32) | rows*cols*channels float32, row-major, channel fastest

inline constexpr std::uint32_t kTensorVersion = 1;

std::vector<std::uint8_t> encode_tensor(const Grid<float>& t);
Grid<float> decode_tensor(std::span<const std::uint8_t> bytes, const std::string& context);
void write_tensor(const fs::path& path, const Grid<float>& t);
Grid<float> read_tensor(const fs::path& path);

/// Label embeddings are stored as an (N, 1, C) tensor in vocabulary order.
void write_label_embeddings(const fs::path& path, const vocab::LabelEmbeddings& e);
vocab::LabelEmbeddings read_label_embeddings(const fs::path& path, const vocab::Vocabulary& v);

// ---- images -----------------------------------------------------------------

/// Binary PPM (P6), 8-bit RGB.
void write_ppm(const fs::path& path, const Grid<std::uint8_t>& rgb);
Grid<std::uint8_t> read_ppm(const fs::path& path);
/// Binary PGM (P5), 16-bit big-endian samples (maxval 65535).
void write_pgm16(const fs::path& path, const Grid<std::uint16_t>& depth);
Grid<std::uint16_t> read_pgm16(const fs::path& path);

// ---- poses ------------------------------------------------------------------

/// One world-from-camera pose per line: 12 numbers, the 3x4 matrix row-major.
std::string format_pose(const geometry::Pose& pose);
geometry::Pose parse_pose(const std::string& line, const std::string& context);
std::vector<geometry::Pose> read_poses(const fs::path& path);
void write_poses(const fs::path& path, const std::vector<geometry::Pose>& poses);

// ---- masks ------------------------------------------------------------------

/// Uncompressed column-major RLE: {"size": [h, w], "counts": [...]}, first run
/// counts zeros.
nlohmann::json rle_encode(const BinaryMask& mask);
BinaryMask rle_decode(const nlohmann::json& rle);

nlohmann::json record_to_json(const instance::MaskRecord& r);
instance::MaskRecord record_from_json(const nlohmann::json& j);
void write_mask_records(const fs::path& path, const std::vector<instance::MaskRecord>& records);
std::vector<instance::MaskRecord> read_mask_records(const fs::path& path);
/// Proposals carried by records (label fields are ignored).
instance::MaskSet masks_from_records(const std::vector<instance::MaskRecord>& records,
                                     int rows, int cols);

// ---- datasets ---------------------------------------------------------------

struct FrameFiles {
  std::string rgb;
  std::string depth;
  std::string embedding;
};

struct Dataset {
  fs::path root;  // directory holding the manifest
  fs::path manifest;
  geometry::CameraIntrinsics intrinsics;
  geometry::GridSpec grid;
  std::vector<std::string> categories;
  std::vector<std::string> colors;
  std::string category_embeddings;
  std::string color_embeddings;
  std::optional<std::string> masks;  // external mask records
  std::optional<std::string> scene;  // ground-truth scene spec
  std::string poses = "poses.txt";
  std::vector<FrameFiles> frames;
  std::vector<geometry::Pose> frame_poses;

  std::size_t size() const { return frames.size(); }
  fs::path resolve(const std::string& rel) const { return root / rel; }
};

/// Parses and validates a manifest: referenced files exist, pose count matches
/// the frame count, rotations are orthonormal within 1e-3.
Dataset load_dataset(const fs::path& manifest);
/// Reads frame `i`; shape mismatches name the offending file.
mapping::FrameInput load_frame(const Dataset& ds, std::size_t i);
/// CRC-32 over the manifest and every referenced file, in manifest order.
std::uint32_t dataset_hash(const Dataset& ds);

/// Writes a rendered synthetic scene as a dataset directory.
fs::path write_scene_dataset(const fs::path& dir, const scenegen::Scene& scene);

nlohmann::json scene_spec_to_json(const scenegen::SceneSpec& spec);
scenegen::SceneSpec scene_spec_from_json(const nlohmann::json& j);

}  // namespace ivlmap::io
