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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivlmap/grid.hpp"
#include "ivlmap/instance.hpp"
#include "ivlmap/localization.hpp"
#include "ivlmap/mapping.hpp"
#include "ivlmap/planner.hpp"

namespace ivlmap::navigation {

/// Heading in degrees: 0 = north (decreasing px), 90 = east (increasing py).
/// Normalized into (-180, 180].
double normalize_heading(double deg);

/// Heading pointing from `from` towards `to`; `fallback` when they coincide.
double bearing(CellF from, CellF to, double fallback = 0.0);

struct AgentState {
  Cell cell;
  double heading_deg = 0.0;
};

enum class Event { start, call, move, turn, stop, blocked };
std::string_view to_string(Event e);

struct TrajectoryStep {
  Cell cell;
  double heading_deg = 0.0;
  Event event = Event::move;
  std::string note;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;

  /// Cell of the most recent stop event at or after `from_step`.
  std::optional<Cell> last_stop(std::size_t from_step = 0) const;
};

struct NavConfig {
  double clearance_m = 0.5;
  double approach_radius_m = 2.0;
  double success_threshold_m = 1.0;
  double facing_tolerance_deg = 15.0;
  localization::Ordering default_ordering = localization::Ordering::left_to_right;
};

/// Result of get_obj_attributes: (object_name, label_id, color).
struct ResolvedAttr {
  std::string name;
  int label_id = 0;
  std::string color;

  friend bool operator==(const ResolvedAttr&, const ResolvedAttr&) = default;
};

/// An object argument: either a description still to be resolved or an
/// already resolved instance.
using ObjectRef = std::variant<localization::ObjAttr, ResolvedAttr>;

struct MoveResult {
  int cells = 0;
  bool blocked = false;
};

/// Four side lengths in meters, starting with the side facing the agent and
/// proceeding clockwise.
using Contour = std::array<double, 4>;

/// Executes the high-level function library for one agent over a finalized map.
class Navigator {
 public:
  /// Throws UnreachableError when `start.cell` is not traversable.
  Navigator(const instance::IvlMap& map, mapping::OccupancyGrid occupancy, NavConfig config,
            AgentState start);

  const AgentState& agent() const { return agent_; }
  const Trajectory& trajectory() const { return trajectory_; }
  const mapping::OccupancyGrid& occupancy() const { return occupancy_; }
  const instance::IvlMap& map() const { return map_; }
  const NavConfig& config() const { return config_; }
  double cell_size() const { return map_.bundle.grid.cell_size; }

  /// Records a call boundary in the trajectory.
  void mark_call(const std::string& name);

  // Queries.
  Cell get_nearest_obj_pos(const std::string& name);
  ResolvedAttr get_obj_attributes(const std::string& name, int instance_idx,
                                  const std::optional<std::string>& color,
                                  std::optional<localization::Ordering> ordering = {});
  Cell get_specified_obj_pos(const ObjectRef& obj);
  Contour get_nearest_obj_contour(const std::string& name);
  Contour get_obj_contour(const ObjectRef& obj);

  // Motion.
  void move_to(Cell pos);
  void move_to_object(const ObjectRef& obj);
  MoveResult move_forward(double meters);
  void stop();

  // Rotation. Positive angles turn right (clockwise).
  void turn(double deg);
  void turn_absolute(double deg);
  void face(const ObjectRef& obj);

  // Side-relative targets.
  void move_to_left(const ObjectRef& obj);
  void move_to_right(const ObjectRef& obj);
  void with_object_on_left(const ObjectRef& obj);
  void with_object_on_right(const ObjectRef& obj);
  void move_north(const ObjectRef& obj);
  void move_south(const ObjectRef& obj);
  void move_east(const ObjectRef& obj);
  void move_west(const ObjectRef& obj);
  void move_in_between(const ObjectRef& a, const ObjectRef& b);

  /// Index into map().records for an object argument.
  std::size_t record_of(const ObjectRef& obj) const;
  /// Index of the nearest labeled record named `name` within +-90 deg of the heading.
  std::size_t nearest_front(const std::string& name) const;

 private:
  enum class Side { north, south, east, west };
  void move_to_side(const ObjectRef& obj, Side side);
  void move_beside(const ObjectRef& obj, double offset_deg);
  void rotate_until(const ObjectRef& obj, double relative_bearing_deg);
  Cell approach(Cell goal) const;
  void push(Event e, std::string note = {});
  void set_heading_units(long long units);
  Contour contour_of(std::size_t record) const;

  const instance::IvlMap& map_;
  mapping::OccupancyGrid occupancy_;
  NavConfig config_;
  AgentState agent_;
  long long heading_units_ = 0;  // nano-degrees, exact under turn/un-turn
  Trajectory trajectory_;
};

/// Subgoal success: a stop was issued and its cell lies within `threshold_m`
/// of the target.
bool check_success(const std::optional<Cell>& stop_cell, CellF target, double cell_size,
                   double threshold_m = 1.0);

}  // namespace ivlmap::navigation
