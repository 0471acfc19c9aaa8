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
#include <string>
#include <vector>

#include "ivlmap/geometry.hpp"
#include "ivlmap/grid.hpp"
#include "ivlmap/instance.hpp"
#include "ivlmap/mapping.hpp"
#include "ivlmap/vocab.hpp"

namespace ivlmap::scenegen {

/// Axis-aligned box occupying the inclusive cell rectangle [min, max].
struct ObjectSpec {
  std::string category;
  std::string color;
  Cell min;
  Cell max;
  double height_m = 0.8;

  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

struct CameraFrame {
  double x = 0.0;
  double z = 0.0;
  double yaw_deg = 0.0;

  friend bool operator==(const CameraFrame&, const CameraFrame&) = default;
};

struct SceneSpec {
  std::uint64_t seed = 0;
  double room_extent_m = 10.0;  // square room centred on the origin
  geometry::GridSpec grid;
  geometry::CameraIntrinsics intrinsics{70.0, 70.0, 79.5, 59.5, 0.001};
  int image_rows = 120;
  int image_cols = 160;
  double camera_height_m = 2.5;
  double noise_sigma = 0.0;
  std::vector<std::string> categories;  // index 0 is the floor
  std::vector<std::string> colors;
  std::string floor_color = "gray";
  std::vector<ObjectSpec> objects;
  std::vector<CameraFrame> path;

  /// Throws Error on overlapping or out-of-room objects, unknown vocabulary
  /// entries, an empty camera path or invalid camera settings.
  void validate() const;
};

std::vector<std::string> default_categories();
std::vector<std::string> default_colors();

/// 7x7 lattice over the room plus one centre frame; yaw alternates 0/90.
std::vector<CameraFrame> standard_camera_path(double room_extent_m);

struct RandomSceneOptions {
  int min_objects = 8;
  int max_objects = 11;
  double min_gap_m = 1.0;
  double wall_margin_m = 0.6;
};

/// Random furnished room. Same-category objects get distinct columns so the
/// left-to-right ordering is strict.
SceneSpec random_scene_spec(std::uint64_t seed, double noise_sigma,
                            const RandomSceneOptions& options = {});

/// Hand-placed room: four yellow tables in a row, a red sofa, a black sofa,
/// chairs and a bed.
SceneSpec fixture_scene_spec(double noise_sigma = 0.0);

struct GroundTruthObject {
  int id = 0;  // 1-based, spec order
  std::string category;
  std::string color;
  int category_index = 0;
  int color_index = 0;
  Cell min;
  Cell max;
  CellF centroid;
};

struct Scene {
  SceneSpec spec;
  vocab::Vocabulary categories;
  vocab::Vocabulary colors;
  vocab::LabelEmbeddings category_embeddings;
  vocab::LabelEmbeddings color_embeddings;
  std::vector<GroundTruthObject> objects;
  LabelGrid instance_raster;  // object id, 0 = none
  LabelGrid category_raster;  // category index, 0 = floor
  LabelGrid color_raster;     // color index
  int embed_dim() const { return categories.size() + colors.size(); }
  /// Room cells (cell centre inside the room).
  bool in_room(Cell c) const;
};

/// Validates the spec and derives vocabularies, label embeddings and the
/// ground-truth rasters.
Scene make_scene(SceneSpec spec);

/// Ray-cast RGB-D frame with one-hot-plus-noise embeddings. Deterministic in
/// (seed, index).
mapping::FrameInput render_frame(const Scene& scene, std::size_t index);

/// World-from-camera pose of a downward-looking camera.
geometry::Pose camera_pose(const CameraFrame& frame, double height_m);

/// Integrates every frame, labels the map and fuses surrogate masks.
instance::IvlMap build_scene_map(const Scene& scene, const instance::FusionOptions& fusion = {},
                                 double max_depth_m = 10.0);

}  // namespace ivlmap::scenegen
