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
#include <limits>
#include <set>
#include <string>

#include "ivlmap/geometry.hpp"
#include "ivlmap/grid.hpp"

namespace ivlmap::mapping {

inline constexpr float kUnobservedHeight = std::numeric_limits<float>::infinity();

/// Bird's-eye map stack: reconstruction colors B, height H, embedding M and
/// per-cell observation counts.
struct MapBundle {
  geometry::GridSpec grid;
  Grid<std::uint8_t> bev_color;  // H̄ x W̄ x 3
  Grid<float> height;            // H̄ x W̄, +inf when unobserved
  Grid<float> embedding;         // H̄ x W̄ x C, running mean
  Grid<std::uint32_t> obs_count; // H̄ x W̄

  int embed_dim() const { return embedding.channels(); }
  bool observed(Cell c) const { return obs_count[c] != 0; }
  std::uint64_t total_observations() const;

  friend bool operator==(const MapBundle&, const MapBundle&) = default;
};

/// One RGB-D frame with per-pixel embeddings aligned to the color image.
struct FrameInput {
  Grid<std::uint8_t> rgb;      // rows x cols x 3
  Grid<std::uint16_t> depth;   // rows x cols, raw units
  geometry::Pose pose;
  Grid<float> embedding;       // rows x cols x C
};

struct FrameStats {
  std::uint64_t pixels = 0;
  std::uint64_t used = 0;
  std::uint64_t skipped_depth = 0;    // zero / invalid depth
  std::uint64_t skipped_range = 0;    // beyond max range
  std::uint64_t skipped_height = 0;   // at or above robot height
  std::uint64_t skipped_bounds = 0;   // outside the grid
  std::uint64_t height_updates = 0;   // cells whose height decreased

  FrameStats& operator+=(const FrameStats& o);
  /// Single-line JSON record for structured logs.
  std::string to_json_line(std::size_t frame_index) const;
};

struct IntegrationOptions {
  geometry::CameraIntrinsics intrinsics;
  double max_depth_m = 10.0;
};

/// Empty bundle; throws FormatError for a zero-sized grid or embed_dim < 1.
MapBundle init_maps(const geometry::GridSpec& grid, int embed_dim);

/// Fuses one frame with the descending height update. Pixels below the robot
/// height always contribute to the embedding mean and observation count; the
/// color and height of a cell only change when the new point is strictly lower.
FrameStats integrate_frame(MapBundle& bundle, const FrameInput& frame,
                           const IntegrationOptions& options);

/// Occupancy raster, 1 = not traversable.
using OccupancyGrid = BinaryMask;

/// Observed cells whose label is not a floor label become obstacles and are
/// dilated by ceil(inflation / s) cells (Chebyshev). Unobserved cells are also
/// non-traversable but are not dilated.
OccupancyGrid obstacle_grid(const MapBundle& bundle, const std::set<int>& floor_labels,
                            const LabelGrid& pixel_labels, double inflation_radius_m);

inline bool traversable(const OccupancyGrid& occ, Cell c) {
  return occ.contains(c) && occ[c] == 0;
}

}  // namespace ivlmap::mapping
