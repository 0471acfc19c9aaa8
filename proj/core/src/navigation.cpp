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

#include "ivlmap/navigation.hpp"

#include <cmath>
#include <numbers>

#include "ivlmap/error.hpp"

namespace ivlmap::navigation {

namespace {

constexpr long long kUnitsPerDegree = 1'000'000'000LL;
constexpr long long kFullTurn = 360 * kUnitsPerDegree;

long long to_units(double deg) { return std::llround(deg * double(kUnitsPerDegree)); }

long long normalize_units(long long u) {
  long long m = ((u % kFullTurn) + kFullTurn) % kFullTurn;
  if (m > kFullTurn / 2) m -= kFullTurn;
  return m;
}

/// Unit step in (px, py) for a heading.
CellF direction(double heading_deg) {
  const double rad = heading_deg * std::numbers::pi / 180.0;
  return {-std::cos(rad), std::sin(rad)};
}

CellF to_f(Cell c) { return {double(c.px), double(c.py)}; }

Cell round_cell(CellF c) { return {int(std::lround(c.px)), int(std::lround(c.py))}; }

}  // namespace

double normalize_heading(double deg) {
  double m = std::fmod(deg, 360.0);
  if (m <= -180.0) m += 360.0;
  if (m > 180.0) m -= 360.0;
  return m;
}

double bearing(CellF from, CellF to, double fallback) {
  const double dpx = to.px - from.px;
  const double dpy = to.py - from.py;
  if (dpx == 0.0 && dpy == 0.0) return fallback;
  return normalize_heading(std::atan2(dpy, -dpx) * 180.0 / std::numbers::pi);
}

std::string_view to_string(Event e) {
  switch (e) {
    case Event::start: return "start";
    case Event::call: return "call";
    case Event::move: return "move";
    case Event::turn: return "turn";
    case Event::stop: return "stop";
    case Event::blocked: return "blocked";
  }
  return "?";
}

std::optional<Cell> Trajectory::last_stop(std::size_t from_step) const {
  std::optional<Cell> out;
  for (std::size_t i = from_step; i < steps.size(); ++i)
    if (steps[i].event == Event::stop) out = steps[i].cell;
  return out;
}

Navigator::Navigator(const instance::IvlMap& map, mapping::OccupancyGrid occupancy,
                     NavConfig config, AgentState start)
    : map_(map), occupancy_(std::move(occupancy)), config_(config), agent_(start) {
  if (!occupancy_.same_shape(map_.bundle.grid.rows, map_.bundle.grid.cols))
    throw FormatError("navigator: occupancy grid does not match the map");
  if (!mapping::traversable(occupancy_, start.cell))
    throw UnreachableError("agent start (" + std::to_string(start.cell.px) + ", " +
                           std::to_string(start.cell.py) + ") is not traversable");
  set_heading_units(to_units(start.heading_deg));
  push(Event::start);
}

void Navigator::set_heading_units(long long units) {
  heading_units_ = normalize_units(units);
  agent_.heading_deg = double(heading_units_) / double(kUnitsPerDegree);
}

void Navigator::push(Event e, std::string note) {
  trajectory_.steps.push_back({agent_.cell, agent_.heading_deg, e, std::move(note)});
}

void Navigator::mark_call(const std::string& name) { push(Event::call, name); }

std::size_t Navigator::record_of(const ObjectRef& obj) const {
  if (const auto* r = std::get_if<ResolvedAttr>(&obj)) return map_.record_index(r->label_id);
  const auto& attr = std::get<localization::ObjAttr>(obj);
  return localization::select_record(attr, map_, agent_.cell, config_.default_ordering);
}

std::size_t Navigator::nearest_front(const std::string& name) const {
  const auto idx = localization::candidates({name, 0, std::nullopt}, map_);
  const CellF here = to_f(agent_.cell);
  std::optional<std::size_t> best;
  double best_d = 0.0;
  for (auto i : idx) {
    const CellF c = map_.centroids[i];
    const double rel = normalize_heading(bearing(here, c, agent_.heading_deg) - agent_.heading_deg);
    if (std::abs(rel) > 90.0) continue;
    const double d = cell_distance(here, c);
    if (!best || d < best_d ||
        (d == best_d && map_.records[i].label_id < map_.records[*best].label_id)) {
      best = i;
      best_d = d;
    }
  }
  if (!best) throw NotFoundError("no '" + name + "' in front of the agent");
  return *best;
}

Cell Navigator::approach(Cell goal) const {
  const BinaryMask reach = localization::reachable_from(agent_.cell, occupancy_);
  return localization::approach_cell(goal, occupancy_, cell_size(), config_.approach_radius_m,
                                     &reach);
}

Cell Navigator::get_nearest_obj_pos(const std::string& name) {
  const auto i = nearest_front(name);
  return approach(localization::fine_position(map_.records[i], map_));
}

ResolvedAttr Navigator::get_obj_attributes(const std::string& name, int instance_idx,
                                           const std::optional<std::string>& color,
                                           std::optional<localization::Ordering> ordering) {
  const localization::ObjAttr attr{name, instance_idx, color};
  const auto i = localization::select_record(attr, map_, agent_.cell,
                                             ordering.value_or(config_.default_ordering));
  const auto& r = map_.records[i];
  return {r.label, r.label_id, r.color};
}

Cell Navigator::get_specified_obj_pos(const ObjectRef& obj) {
  return approach(localization::fine_position(map_.records[record_of(obj)], map_));
}

Contour Navigator::contour_of(std::size_t i) const {
  const auto& r = map_.records[i];
  const double s = cell_size();
  const double ew = r.bbox[2] * s + 2.0 * config_.clearance_m;
  const double ns = r.bbox[3] * s + 2.0 * config_.clearance_m;
  const CellF c = map_.centroids[i];
  const double half_rows = r.bbox[3] / 2.0;
  const double half_cols = r.bbox[2] / 2.0;
  const double dpx = std::abs(agent_.cell.px - c.px) / half_rows;
  const double dpy = std::abs(agent_.cell.py - c.py) / half_cols;
  // Facing a north/south side means walking along an east-west edge first.
  if (dpx >= dpy) return {ew, ns, ew, ns};
  return {ns, ew, ns, ew};
}

Contour Navigator::get_nearest_obj_contour(const std::string& name) {
  return contour_of(nearest_front(name));
}

Contour Navigator::get_obj_contour(const ObjectRef& obj) { return contour_of(record_of(obj)); }

void Navigator::move_to(Cell pos) {
  const Cell goal = approach(pos);
  if (goal == agent_.cell) return;
  const auto path = planner::plan_path(agent_.cell, goal, occupancy_);
  if (!path)
    throw UnreachableError("no path from (" + std::to_string(agent_.cell.px) + ", " +
                           std::to_string(agent_.cell.py) + ") to (" + std::to_string(goal.px) +
                           ", " + std::to_string(goal.py) + ")");
  for (std::size_t k = 1; k < path->cells.size(); ++k) {
    const Cell prev = path->cells[k - 1];
    const Cell next = path->cells[k];
    set_heading_units(to_units(bearing(to_f(prev), to_f(next), agent_.heading_deg)));
    agent_.cell = next;
    push(Event::move);
  }
}

void Navigator::move_to_object(const ObjectRef& obj) {
  move_to(localization::fine_position(map_.records[record_of(obj)], map_));
}

MoveResult Navigator::move_forward(double meters) {
  MoveResult out;
  const long long n = std::llround(std::floor(std::abs(meters) / cell_size() + 0.5));
  if (n == 0) return out;
  CellF dir = direction(agent_.heading_deg);
  if (meters < 0) dir = {-dir.px, -dir.py};
  const CellF origin = to_f(agent_.cell);
  for (long long i = 1; i <= n; ++i) {
    const Cell next = round_cell({origin.px + double(i) * dir.px, origin.py + double(i) * dir.py});
    if (next == agent_.cell) continue;
    if (!mapping::traversable(occupancy_, next)) {
      out.blocked = true;
      push(Event::blocked);
      break;
    }
    agent_.cell = next;
    ++out.cells;
    push(Event::move);
  }
  return out;
}

void Navigator::stop() { push(Event::stop); }

void Navigator::turn(double deg) {
  set_heading_units(heading_units_ + to_units(deg));
  push(Event::turn);
}

void Navigator::turn_absolute(double deg) {
  set_heading_units(to_units(deg));
  push(Event::turn);
}

void Navigator::face(const ObjectRef& obj) {
  const CellF c = map_.centroids[record_of(obj)];
  set_heading_units(to_units(bearing(to_f(agent_.cell), c, agent_.heading_deg)));
  push(Event::turn);
}

void Navigator::rotate_until(const ObjectRef& obj, double relative_bearing_deg) {
  const CellF c = map_.centroids[record_of(obj)];
  const double b = bearing(to_f(agent_.cell), c, agent_.heading_deg);
  const double rel = normalize_heading(b - agent_.heading_deg);
  if (std::abs(normalize_heading(rel - relative_bearing_deg)) <= config_.facing_tolerance_deg)
    return;
  set_heading_units(to_units(b - relative_bearing_deg));
  push(Event::turn);
}

void Navigator::with_object_on_left(const ObjectRef& obj) { rotate_until(obj, -90.0); }
void Navigator::with_object_on_right(const ObjectRef& obj) { rotate_until(obj, 90.0); }

void Navigator::move_beside(const ObjectRef& obj, double offset_deg) {
  const std::size_t i = record_of(obj);
  const auto& r = map_.records[i];
  const CellF c = map_.centroids[i];
  const double b = bearing(to_f(agent_.cell), c, agent_.heading_deg);
  const CellF dir = direction(b + offset_deg);
  const double half_rows = r.bbox[3] / 2.0;
  const double half_cols = r.bbox[2] / 2.0;
  double t = std::numeric_limits<double>::infinity();
  if (std::abs(dir.px) > 1e-12) t = std::min(t, half_rows / std::abs(dir.px));
  if (std::abs(dir.py) > 1e-12) t = std::min(t, half_cols / std::abs(dir.py));
  const double reach = t + config_.clearance_m / cell_size();
  move_to(round_cell({c.px + reach * dir.px, c.py + reach * dir.py}));
}

void Navigator::move_to_left(const ObjectRef& obj) { move_beside(obj, -90.0); }
void Navigator::move_to_right(const ObjectRef& obj) { move_beside(obj, 90.0); }

void Navigator::move_to_side(const ObjectRef& obj, Side side) {
  const auto& r = map_.records[record_of(obj)];
  const int clearance = int(std::ceil(config_.clearance_m / cell_size() - 1e-9));
  const int x = r.bbox[0], y = r.bbox[1], w = r.bbox[2], h = r.bbox[3];
  const int mid_row = y + (h - 1) / 2;
  const int mid_col = x + (w - 1) / 2;
  Cell seed{};
  switch (side) {
    case Side::north: seed = {y - clearance, mid_col}; break;
    case Side::south: seed = {y + h - 1 + clearance, mid_col}; break;
    case Side::west: seed = {mid_row, x - clearance}; break;
    case Side::east: seed = {mid_row, x + w - 1 + clearance}; break;
  }
  move_to(seed);
}

void Navigator::move_north(const ObjectRef& obj) { move_to_side(obj, Side::north); }
void Navigator::move_south(const ObjectRef& obj) { move_to_side(obj, Side::south); }
void Navigator::move_east(const ObjectRef& obj) { move_to_side(obj, Side::east); }
void Navigator::move_west(const ObjectRef& obj) { move_to_side(obj, Side::west); }

void Navigator::move_in_between(const ObjectRef& a, const ObjectRef& b) {
  const CellF ca = map_.centroids[record_of(a)];
  const CellF cb = map_.centroids[record_of(b)];
  move_to(round_cell({(ca.px + cb.px) / 2.0, (ca.py + cb.py) / 2.0}));
}

bool check_success(const std::optional<Cell>& stop_cell, CellF target, double cell_size,
                   double threshold_m) {
  if (!stop_cell) return false;
  const double d = cell_distance(CellF{double(stop_cell->px), double(stop_cell->py)}, target);
  return d * cell_size <= threshold_m + 1e-9;
}

}  // namespace ivlmap::navigation
