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


#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <queue>

#include <boost/multiprecision/cpp_int.hpp>

namespace ivlmap::testing {

namespace mp = boost::multiprecision;

namespace {

long long floor_rational(const mp::cpp_rational& q) {
  const mp::cpp_int n = mp::numerator(q);
  const mp::cpp_int d = mp::denominator(q);  // always positive
  mp::cpp_int f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f.convert_to<long long>();
}

}  // namespace

Cell eq1_exact(double x, double z, const geometry::GridSpec& grid) {
  const mp::cpp_rational s(grid.cell_size);
  const mp::cpp_rational half(1, 2);
  const mp::cpp_rational px = mp::cpp_rational(grid.rows, 2) + mp::cpp_rational(x) / s + half;
  const mp::cpp_rational py = mp::cpp_rational(grid.cols, 2) - mp::cpp_rational(z) / s + half;
  return {int(floor_rational(px)), int(floor_rational(py))};
}

bool cost_less(const planner::PathCost& a, const planner::PathCost& b) {
  // a.s + a.d*r < b.s + b.d*r with r = sqrt(2)  <=>  da < db*r
  const long long da = a.straight - b.straight;
  const long long db = b.diagonal - a.diagonal;
  if (da < 0 && db >= 0) return true;
  if (da >= 0 && db <= 0) return false;
  if (da >= 0) return da * da < 2 * db * db;
  return da * da > 2 * db * db;
}

std::optional<planner::PathCost> dijkstra_cost(Cell start, Cell goal,
                                               const mapping::OccupancyGrid& occ) {
  const auto free = [&](int r, int c) {
    return r >= 0 && c >= 0 && r < occ.rows() && c < occ.cols() && occ(r, c) == 0;
  };
  if (!free(start.px, start.py) || !free(goal.px, goal.py)) return std::nullopt;
  const int n = occ.rows() * occ.cols();
  std::vector<std::optional<planner::PathCost>> dist(static_cast<std::size_t>(n));
  std::vector<bool> done(std::size_t(n), false);
  const auto id = [&](int r, int c) { return std::size_t(r * occ.cols() + c); };
  dist[id(start.px, start.py)] = planner::PathCost{};
  // O(n^2) selection keeps the oracle obviously correct.
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < std::size_t(n); ++i)
      if (!done[i] && dist[i] && (!best || cost_less(*dist[i], *dist[*best]))) best = i;
    if (!best) break;
    done[*best] = true;
    const int r = int(*best) / occ.cols(), c = int(*best) % occ.cols();
    if (r == goal.px && c == goal.py) return dist[*best];
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        if ((dr == 0 && dc == 0) || !free(r + dr, c + dc)) continue;
        const bool diag = dr != 0 && dc != 0;
        if (diag && (!free(r + dr, c) || !free(r, c + dc))) continue;
        planner::PathCost next = *dist[*best];
        if (diag) ++next.diagonal; else ++next.straight;
        auto& slot = dist[id(r + dr, c + dc)];
        if (!slot || cost_less(next, *slot)) slot = next;
      }
  }
  return std::nullopt;
}

bool valid_path(const std::vector<Cell>& cells, const mapping::OccupancyGrid& occ) {
  const auto free = [&](int r, int c) {
    return r >= 0 && c >= 0 && r < occ.rows() && c < occ.cols() && occ(r, c) == 0;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!free(cells[i].px, cells[i].py)) return false;
    if (i == 0) continue;
    const int dr = cells[i].px - cells[i - 1].px, dc = cells[i].py - cells[i - 1].py;
    if (std::abs(dr) > 1 || std::abs(dc) > 1 || (dr == 0 && dc == 0)) return false;
    if (dr != 0 && dc != 0 &&
        (!free(cells[i - 1].px + dr, cells[i - 1].py) || !free(cells[i - 1].px, cells[i - 1].py + dc)))
      return false;
  }
  return true;
}

mapping::OccupancyGrid dilation_oracle(const mapping::MapBundle& bundle,
                                       const std::set<int>& floor_labels,
                                       const LabelGrid& labels, int radius) {
  const int rows = bundle.grid.rows, cols = bundle.grid.cols;
  mapping::OccupancyGrid out(rows, cols, 1, 0);
  std::vector<Cell> seeds;
  for_each_cell(rows, cols, [&](Cell c) {
    if (bundle.obs_count[c] == 0) out[c] = 1;
    else if (!floor_labels.count(labels[c])) seeds.push_back(c);
  });
  for_each_cell(rows, cols, [&](Cell c) {
    for (const Cell& s : seeds)
      if (std::max(std::abs(s.px - c.px), std::abs(s.py - c.py)) <= radius) {
        out[c] = 1;
        break;
      }
  });
  return out;
}

LabelGrid median_oracle(const LabelGrid& labels) {
  LabelGrid out(labels.rows(), labels.cols());
  for_each_cell(labels.rows(), labels.cols(), [&](Cell c) {
    std::vector<int> v;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc)
        v.push_back(labels(std::clamp(c.px + dr, 0, labels.rows() - 1),
                           std::clamp(c.py + dc, 0, labels.cols() - 1)));
    std::sort(v.begin(), v.end());
    out[c] = v[4];
  });
  return out;
}

std::vector<std::vector<Cell>> components_oracle(const LabelGrid& labels, int background,
                                                 int min_area) {
  std::vector<std::vector<Cell>> out;
  Grid<int> seen(labels.rows(), labels.cols(), 1, 0);
  for_each_cell(labels.rows(), labels.cols(), [&](Cell c) {
    if (seen[c] || labels[c] == background) return;
    std::vector<Cell> comp;
    std::deque<Cell> q{c};
    seen[c] = 1;
    while (!q.empty()) {
      const Cell cur = q.front();
      q.pop_front();
      comp.push_back(cur);
      const Cell nbrs[4] = {{cur.px - 1, cur.py}, {cur.px + 1, cur.py},
                            {cur.px, cur.py - 1}, {cur.px, cur.py + 1}};
      for (const Cell& n : nbrs)
        if (labels.contains(n) && !seen[n] && labels[n] == labels[c]) {
          seen[n] = 1;
          q.push_back(n);
        }
    }
    if (int(comp.size()) >= min_area) {
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  });
  return out;
}

std::vector<Eq2Row> eq2_oracle(const LabelGrid& pixel_labels, const BinaryMask& mask,
                               std::optional<int> background) {
  std::map<int, std::size_t> counts;
  std::size_t total = 0;
  for_each_cell(mask.rows(), mask.cols(), [&](Cell c) {
    if (!mask[c]) return;
    const int l = pixel_labels[c];
    if (background && l == *background) return;
    ++counts[l];
    ++total;
  });
  std::vector<Eq2Row> rows;
  for (const auto& [l, n] : counts) rows.push_back({l, n, double(n) / double(total)});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Eq2Row& a, const Eq2Row& b) { return a.count > b.count; });
  return rows;
}

std::vector<int> left_to_right_oracle(const localization::ObjAttr& attr,
                                      const instance::IvlMap& map) {
  struct Entry {
    double py;
    int label_id;
  };
  std::vector<Entry> entries;
  for (const auto& r : map.records) {
    if (r.label != attr.name || (attr.color && r.color != *attr.color)) continue;
    double sum = 0.0;
    std::size_t n = 0;
    for_each_cell(r.segmentation.rows(), r.segmentation.cols(), [&](Cell c) {
      if (r.segmentation[c]) {
        sum += c.py;
        ++n;
      }
    });
    entries.push_back({sum / double(n), r.label_id});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.py != b.py ? a.py < b.py : a.label_id < b.label_id;
  });
  std::vector<int> ids;
  for (const auto& e : entries) ids.push_back(e.label_id);
  return ids;
}

}  // namespace ivlmap::testing
