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

#include "ivlmap/localization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "ivlmap/error.hpp"

namespace ivlmap::localization {

std::string to_string(const ObjAttr& attr) {
  return "(" + attr.name + ", " + std::to_string(attr.instance_idx) + ", " +
         attr.color.value_or("None") + ")";
}

std::string_view to_string(Ordering o) {
  return o == Ordering::nearest ? "nearest" : "left_to_right";
}

std::optional<Ordering> parse_ordering(std::string_view s) {
  if (s == "nearest") return Ordering::nearest;
  if (s == "left_to_right") return Ordering::left_to_right;
  return std::nullopt;
}

std::vector<std::size_t> candidates(const ObjAttr& attr, const instance::IvlMap& map) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < map.records.size(); ++i) {
    const auto& r = map.records[i];
    if (!r.labeled() || r.label != attr.name) continue;
    if (attr.color && r.color != *attr.color) continue;
    out.push_back(i);
  }
  return out;
}

std::size_t select_record(const ObjAttr& attr, const instance::IvlMap& map, Cell agent,
                          Ordering ordering) {
  if (attr.instance_idx < 0) throw Error("instance index must be >= 0 in " + to_string(attr));
  auto idx = candidates(attr, map);
  if (idx.empty()) throw NotFoundError("no instance matches " + to_string(attr));
  if (map.centroids.size() != map.records.size())
    throw Error("map index is stale; call refresh_index()");
  const CellF a{double(agent.px), double(agent.py)};
  const auto by = (attr.instance_idx == 0) ? Ordering::nearest : ordering;
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    const double kx = by == Ordering::nearest ? cell_distance(map.centroids[x], a)
                                              : map.centroids[x].py;
    const double ky = by == Ordering::nearest ? cell_distance(map.centroids[y], a)
                                              : map.centroids[y].py;
    if (kx != ky) return kx < ky;
    return map.records[x].label_id < map.records[y].label_id;
  });
  if (attr.instance_idx == 0) return idx.front();
  if (std::size_t(attr.instance_idx) > idx.size())
    throw IndexOutOfRangeError("instance index " + std::to_string(attr.instance_idx) +
                               " exceeds the " + std::to_string(idx.size()) +
                               " candidates for " + to_string(attr));
  return idx[std::size_t(attr.instance_idx - 1)];
}

namespace {

Cell nearest_mask_cell(const BinaryMask& mask, CellF target) {
  Cell best{-1, -1};
  double best_d = std::numeric_limits<double>::infinity();
  for (int r = 0; r < mask.rows(); ++r)
    for (int c = 0; c < mask.cols(); ++c) {
      if (!mask(r, c)) continue;
      const double d = std::hypot(r - target.px, c - target.py);
      if (d < best_d) {
        best_d = d;
        best = {r, c};
      }
    }
  return best;
}

}  // namespace

Cell fine_position(const instance::MaskRecord& record, const instance::IvlMap& map) {
  const auto label = map.categories.find(record.label);
  double sr = 0.0, sc = 0.0;
  std::size_t n = 0;
  const auto& mask = record.segmentation;
  if (label) {
    for (int r = 0; r < mask.rows(); ++r)
      for (int c = 0; c < mask.cols(); ++c)
        if (mask(r, c) && map.category_labels(r, c) == *label) {
          sr += r;
          sc += c;
          ++n;
        }
  }
  const CellF centroid = n > 0 ? CellF{sr / double(n), sc / double(n)}
                               : instance::mask_centroid(mask);
  const Cell goal = nearest_mask_cell(mask, centroid);
  if (goal.px < 0) throw Error("fine_position: record " + std::to_string(record.label_id) +
                               " has an empty mask");
  return goal;
}

BinaryMask reachable_from(Cell start, const mapping::OccupancyGrid& occ) {
  BinaryMask seen(occ.rows(), occ.cols(), 1, 0);
  if (!mapping::traversable(occ, start)) return seen;
  std::deque<Cell> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        const Cell n{cur.px + dr, cur.py + dc};
        if ((dr == 0 && dc == 0) || !mapping::traversable(occ, n) || seen[n]) continue;
        if (dr != 0 && dc != 0 && (!mapping::traversable(occ, {cur.px + dr, cur.py}) ||
                                   !mapping::traversable(occ, {cur.px, cur.py + dc})))
          continue;  // same corner rule as the planner
        seen[n] = 1;
        queue.push_back(n);
      }
  }
  return seen;
}

Cell approach_cell(Cell goal, const mapping::OccupancyGrid& occ, double cell_size,
                   double max_radius_m, const BinaryMask* reachable) {
  auto ok = [&](Cell c) {
    return mapping::traversable(occ, c) && (reachable == nullptr || (*reachable)[c] != 0);
  };
  if (ok(goal)) return goal;
  const double radius = max_radius_m / cell_size;
  const int r = int(std::floor(radius + 1e-9));
  Cell best{-1, -1};
  long long best_d2 = std::numeric_limits<long long>::max();
  for (int dr = -r; dr <= r; ++dr)
    for (int dc = -r; dc <= r; ++dc) {
      const long long d2 = 1LL * dr * dr + 1LL * dc * dc;
      if (double(d2) > radius * radius + 1e-9 || d2 > best_d2) continue;
      const Cell c{goal.px + dr, goal.py + dc};
      if (!ok(c)) continue;
      if (d2 < best_d2 || c < best) {
        best_d2 = d2;
        best = c;
      }
    }
  if (best.px < 0 && best_d2 == std::numeric_limits<long long>::max())
    throw UnreachableError("no traversable cell within " + std::to_string(max_radius_m) +
                           " m of (" + std::to_string(goal.px) + ", " + std::to_string(goal.py) +
                           ")");
  return best;
}

InstanceRef resolve(const ObjAttr& attr, const instance::IvlMap& map, Cell agent,
                    Ordering ordering, const mapping::OccupancyGrid& occupancy) {
  const std::size_t i = select_record(attr, map, agent, ordering);
  const auto& rec = map.records[i];
  InstanceRef ref;
  ref.label_id = rec.label_id;
  ref.goal_cell = fine_position(rec, map);
  const BinaryMask reach = reachable_from(agent, occupancy);
  const BinaryMask* filter = mapping::traversable(occupancy, agent) ? &reach : nullptr;
  ref.approach_cell = approach_cell(ref.goal_cell, occupancy, map.bundle.grid.cell_size, 2.0,
                                    filter);
  return ref;
}

}  // namespace ivlmap::localization
