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

#include "ivlmap/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <tuple>

namespace ivlmap::planner {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double octile(Cell a, Cell b) {
  const int dx = std::abs(a.px - b.px);
  const int dy = std::abs(a.py - b.py);
  return double(std::max(dx, dy) - std::min(dx, dy)) + kSqrt2 * std::min(dx, dy);
}

struct Node {
  double f;
  double h;
  Cell cell;
  bool operator>(const Node& o) const {
    return std::tie(f, h, cell) > std::tie(o.f, o.h, o.cell);
  }
};

}  // namespace

PathCost path_cost(const std::vector<Cell>& cells) {
  PathCost cost;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const bool diag = cells[i].px != cells[i - 1].px && cells[i].py != cells[i - 1].py;
    (diag ? cost.diagonal : cost.straight) += 1;
  }
  return cost;
}

std::optional<Path> plan_path(Cell start, Cell goal, const mapping::OccupancyGrid& occ) {
  using mapping::traversable;
  if (!traversable(occ, start) || !traversable(occ, goal)) return std::nullopt;
  if (start == goal) return Path{{start}, {}};

  const int rows = occ.rows();
  const int cols = occ.cols();
  const auto idx = [cols](Cell c) { return std::size_t(c.px) * std::size_t(cols) + std::size_t(c.py); };
  std::vector<PathCost> g(std::size_t(rows) * std::size_t(cols),
                          PathCost{std::numeric_limits<long long>::max() / 4, 0});
  std::vector<int> parent(g.size(), -1);
  std::vector<std::uint8_t> closed(g.size(), 0);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  g[idx(start)] = {};
  open.push({octile(start, goal), octile(start, goal), start});

  while (!open.empty()) {
    const Node cur = open.top();
    open.pop();
    const std::size_t ci = idx(cur.cell);
    if (closed[ci]) continue;
    closed[ci] = 1;
    if (cur.cell == goal) break;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const Cell n{cur.cell.px + dr, cur.cell.py + dc};
        if (!traversable(occ, n)) continue;
        const bool diag = dr != 0 && dc != 0;
        if (diag && (!traversable(occ, {cur.cell.px + dr, cur.cell.py}) ||
                     !traversable(occ, {cur.cell.px, cur.cell.py + dc})))
          continue;
        const std::size_t ni = idx(n);
        if (closed[ni]) continue;
        PathCost cand = g[ci];
        (diag ? cand.diagonal : cand.straight) += 1;
        if (cand.value() < g[ni].value() - 1e-9) {
          g[ni] = cand;
          parent[ni] = int(ci);
          const double h = octile(n, goal);
          open.push({cand.value() + h, h, n});
        }
      }
    }
  }
  if (!closed[idx(goal)]) return std::nullopt;

  Path path;
  for (int i = int(idx(goal)); i >= 0; i = parent[std::size_t(i)])
    path.cells.push_back({i / cols, i % cols});
  std::reverse(path.cells.begin(), path.cells.end());
  path.cost = g[idx(goal)];
  return path;
}

}  // namespace ivlmap::planner
