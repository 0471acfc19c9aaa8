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

#include "ivlmap/mapping.hpp"

#include <cmath>
#include <sstream>

#include "ivlmap/error.hpp"

namespace ivlmap::mapping {

std::uint64_t MapBundle::total_observations() const {
  std::uint64_t n = 0;
  for (auto v : obs_count.data()) n += v;
  return n;
}

FrameStats& FrameStats::operator+=(const FrameStats& o) {
  pixels += o.pixels;
  used += o.used;
  skipped_depth += o.skipped_depth;
  skipped_range += o.skipped_range;
  skipped_height += o.skipped_height;
  skipped_bounds += o.skipped_bounds;
  height_updates += o.height_updates;
  return *this;
}

std::string FrameStats::to_json_line(std::size_t frame_index) const {
  std::ostringstream os;
  os << "{\"event\":\"frame_integrated\",\"frame\":" << frame_index << ",\"pixels\":" << pixels
     << ",\"used\":" << used << ",\"skipped_depth\":" << skipped_depth
     << ",\"skipped_range\":" << skipped_range << ",\"skipped_height\":" << skipped_height
     << ",\"skipped_bounds\":" << skipped_bounds << ",\"height_updates\":" << height_updates
     << "}";
  return os.str();
}

MapBundle init_maps(const geometry::GridSpec& grid, int embed_dim) {
  grid.validate();
  if (embed_dim < 1) throw FormatError("init_maps: embedding dimension must be >= 1");
  MapBundle b;
  b.grid = grid;
  b.bev_color = Grid<std::uint8_t>(grid.rows, grid.cols, 3, 0);
  b.height = Grid<float>(grid.rows, grid.cols, 1, kUnobservedHeight);
  b.embedding = Grid<float>(grid.rows, grid.cols, embed_dim, 0.0f);
  b.obs_count = Grid<std::uint32_t>(grid.rows, grid.cols, 1, 0);
  return b;
}

FrameStats integrate_frame(MapBundle& bundle, const FrameInput& frame,
                           const IntegrationOptions& options) {
  const int rows = frame.depth.rows();
  const int cols = frame.depth.cols();
  if (!frame.rgb.same_shape(frame.depth) || frame.rgb.channels() != 3)
    throw FormatError("integrate_frame: rgb and depth dimensions differ");
  if (!frame.embedding.same_shape(frame.depth))
    throw FormatError("integrate_frame: embedding and depth dimensions differ");
  if (frame.embedding.channels() != bundle.embed_dim())
    throw FormatError("integrate_frame: embedding dimension " +
                      std::to_string(frame.embedding.channels()) + " does not match map (" +
                      std::to_string(bundle.embed_dim()) + ")");
  frame.pose.validate(1e-3);

  const auto& grid = bundle.grid;
  const int dim = bundle.embed_dim();
  FrameStats stats;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      ++stats.pixels;
      const auto p_cam = geometry::backproject(r, c, frame.depth(r, c), options.intrinsics);
      if (!p_cam) {
        ++stats.skipped_depth;
        continue;
      }
      if (p_cam->z() > options.max_depth_m) {
        ++stats.skipped_range;
        continue;
      }
      const geometry::Vec3 p_world = geometry::to_world(*p_cam, frame.pose);
      if (p_world.y() >= grid.robot_height) {
        ++stats.skipped_height;
        continue;
      }
      const auto cell = geometry::project_to_grid(p_world, grid);
      if (!cell) {
        ++stats.skipped_bounds;
        continue;
      }
      ++stats.used;
      const auto h = static_cast<float>(p_world.y());
      if (h < bundle.height[*cell]) {
        bundle.height[*cell] = h;
        for (int k = 0; k < 3; ++k) bundle.bev_color(cell->px, cell->py, k) = frame.rgb(r, c, k);
        ++stats.height_updates;
      }
      auto& n = bundle.obs_count[*cell];
      ++n;
      const float inv = 1.0f / static_cast<float>(n);
      auto mean = bundle.embedding.channels_at(cell->px, cell->py);
      const auto e = frame.embedding.channels_at(r, c);
      for (int k = 0; k < dim; ++k) mean[k] += (e[k] - mean[k]) * inv;
    }
  }
  return stats;
}

OccupancyGrid obstacle_grid(const MapBundle& bundle, const std::set<int>& floor_labels,
                            const LabelGrid& pixel_labels, double inflation_radius_m) {
  const auto& grid = bundle.grid;
  if (!pixel_labels.same_shape(grid.rows, grid.cols))
    throw FormatError("obstacle_grid: label map shape does not match the grid");
  BinaryMask core(grid.rows, grid.cols, 1, 0);
  for_each_cell(grid.rows, grid.cols, [&](Cell c) {
    if (bundle.observed(c) && !floor_labels.contains(pixel_labels[c])) core[c] = 1;
  });

  const int radius =
      inflation_radius_m > 0 ? int(std::ceil(inflation_radius_m / grid.cell_size - 1e-9)) : 0;
  OccupancyGrid occ(grid.rows, grid.cols, 1, 0);
  // Separable Chebyshev dilation: rows, then columns.
  BinaryMask tmp(grid.rows, grid.cols, 1, 0);
  for (int r = 0; r < grid.rows; ++r) {
    int last = -1'000'000;  // last obstacle column seen
    for (int c = 0; c < grid.cols; ++c) {
      if (core(r, c)) {
        last = c;
        for (int k = std::max(0, c - radius); k < c; ++k) tmp(r, k) = 1;
      }
      if (c - last <= radius) tmp(r, c) = 1;
    }
  }
  for (int c = 0; c < grid.cols; ++c) {
    int last = -1'000'000;
    for (int r = 0; r < grid.rows; ++r) {
      if (tmp(r, c)) {
        last = r;
        for (int k = std::max(0, r - radius); k < r; ++k) occ(k, c) = 1;
      }
      if (r - last <= radius) occ(r, c) = 1;
    }
  }
  for_each_cell(grid.rows, grid.cols, [&](Cell c) {
    if (!bundle.observed(c)) occ[c] = 1;
  });
  return occ;
}

}  // namespace ivlmap::mapping
