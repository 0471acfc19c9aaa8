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

#include <cmath>
#include <optional>
#include <vector>

#include "ivlmap/grid.hpp"
#include "ivlmap/mapping.hpp"

namespace ivlmap::planner {

/// Path length as (axis steps, diagonal steps). The pair is unique for a given
/// length a + b*sqrt(2), so optimal costs compare exactly.
struct PathCost {
  long long straight = 0;
  long long diagonal = 0;

  double meters(double cell_size) const { return value() * cell_size; }
  double value() const { return double(straight) + double(diagonal) * std::sqrt(2.0); }
  friend bool operator==(const PathCost&, const PathCost&) = default;
};

struct Path {
  std::vector<Cell> cells;  // start..goal inclusive
  PathCost cost;
};

/// A* over the 8-connected grid (diagonal cost sqrt 2, octile heuristic).
/// Diagonal moves may not cut an occupied corner. Returns nullopt when the goal
/// is unreachable; the start must be traversable.
std::optional<Path> plan_path(Cell start, Cell goal, const mapping::OccupancyGrid& occupancy);

/// Sums the step costs of an explicit cell sequence.
PathCost path_cost(const std::vector<Cell>& cells);

}  // namespace ivlmap::planner
