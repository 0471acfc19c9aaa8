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

#include <optional>
#include <string>
#include <vector>

#include "ivlmap/grid.hpp"
#include "ivlmap/instance.hpp"
#include "ivlmap/mapping.hpp"

namespace ivlmap::localization {

/// Landmark description: category, 1-based ordinal (0 = unspecified) and
/// optional color.
struct ObjAttr {
  std::string name;
  int instance_idx = 0;
  std::optional<std::string> color;

  friend bool operator==(const ObjAttr&, const ObjAttr&) = default;
};

std::string to_string(const ObjAttr& attr);

enum class Ordering { nearest, left_to_right };

std::string_view to_string(Ordering o);
std::optional<Ordering> parse_ordering(std::string_view s);

struct InstanceRef {
  int label_id = 0;
  Cell goal_cell;
  Cell approach_cell;
};

/// Indices of labeled records matching name (and color when given).
std::vector<std::size_t> candidates(const ObjAttr& attr, const instance::IvlMap& map);

/// Coarse step: picks one record. instance_idx 0 takes the nearest candidate;
/// k >= 1 takes the k-th candidate of `ordering`. Ties break by label_id.
/// Throws NotFoundError / IndexOutOfRangeError.
std::size_t select_record(const ObjAttr& attr, const instance::IvlMap& map, Cell agent,
                          Ordering ordering);

/// Fine step: centroid of the mask cells whose category label agrees with
/// the record, falling back to the whole mask, snapped to the nearest mask cell.
Cell fine_position(const instance::MaskRecord& record, const instance::IvlMap& map);

/// Cells reachable from `start` through traversable 8-connected moves that do
/// not cut an occupied corner.
BinaryMask reachable_from(Cell start, const mapping::OccupancyGrid& occupancy);

/// Nearest traversable cell to `goal` (Euclidean, ties by row then column)
/// within `max_radius_m`. When `reachable` is given the cell must also be set
/// there. Throws UnreachableError when no such cell exists.
Cell approach_cell(Cell goal, const mapping::OccupancyGrid& occupancy, double cell_size,
                   double max_radius_m = 2.0, const BinaryMask* reachable = nullptr);

/// Full two-step lookup including the approach cell reachable from `agent`.
InstanceRef resolve(const ObjAttr& attr, const instance::IvlMap& map, Cell agent,
                    Ordering ordering, const mapping::OccupancyGrid& occupancy);

}  // namespace ivlmap::localization
