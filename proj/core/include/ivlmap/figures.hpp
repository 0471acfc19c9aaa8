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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "ivlmap/instance.hpp"
#include "ivlmap/navigation.hpp"

namespace ivlmap::io {

using Image = Grid<std::uint8_t>;  // rows x cols x 3

/// Fixed distinct color for a label or instance index; 0 maps to dark gray.
std::array<std::uint8_t, 3> palette(int index);

Image render_bev(const mapping::MapBundle& bundle);
Image render_semantic(const instance::IvlMap& map);
Image render_instances(const instance::IvlMap& map);
/// BEV with occupied cells darkened, the path in cyan, start green, end red.
Image render_trajectory(const instance::IvlMap& map, const mapping::OccupancyGrid& occupancy,
                        const navigation::Trajectory& trajectory);

/// step,px,py,x_m,z_m,heading_deg,event,note
std::string trajectory_csv(const navigation::Trajectory& trajectory,
                           const geometry::GridSpec& grid);

}  // namespace ivlmap::io
