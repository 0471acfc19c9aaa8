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

#include "ivlmap/figures.hpp"

#include <cmath>
#include <cstdio>

namespace ivlmap::io {

std::array<std::uint8_t, 3> palette(int index) {
  if (index <= 0) return {40, 40, 40};
  // Golden-angle hue walk at fixed saturation and value.
  const double h = std::fmod(index * 137.508, 360.0) / 60.0;
  const double x = 1.0 - std::abs(std::fmod(h, 2.0) - 1.0);
  double r = 0, g = 0, b = 0;
  switch (int(h)) {
    case 0: r = 1; g = x; break;
    case 1: r = x; g = 1; break;
    case 2: g = 1; b = x; break;
    case 3: g = x; b = 1; break;
    case 4: r = x; b = 1; break;
    default: r = 1; b = x; break;
  }
  auto q = [](double v) { return std::uint8_t(std::lround(60 + 180 * v)); };
  return {q(r), q(g), q(b)};
}

Image render_bev(const mapping::MapBundle& bundle) {
  Image img = bundle.bev_color;
  for_each_cell(img.rows(), img.cols(), [&](Cell c) {
    if (!bundle.observed(c))
      for (int ch = 0; ch < 3; ++ch) img(c.px, c.py, ch) = 0;
  });
  return img;
}

namespace {

Image paint(const instance::IvlMap& map, const LabelGrid& labels, bool skip_zero) {
  Image img(labels.rows(), labels.cols(), 3, 0);
  for_each_cell(img.rows(), img.cols(), [&](Cell c) {
    if (!map.bundle.observed(c)) return;
    const int v = labels[c];
    if (skip_zero && v == 0) return;
    const auto rgb = palette(skip_zero ? v : v + 1);
    for (int ch = 0; ch < 3; ++ch) img(c.px, c.py, ch) = rgb[std::size_t(ch)];
  });
  return img;
}

}  // namespace

Image render_semantic(const instance::IvlMap& map) {
  return paint(map, map.category_labels, false);
}

Image render_instances(const instance::IvlMap& map) { return paint(map, map.instance_ids, true); }

Image render_trajectory(const instance::IvlMap& map, const mapping::OccupancyGrid& occupancy,
                        const navigation::Trajectory& trajectory) {
  Image img = render_bev(map.bundle);
  for_each_cell(img.rows(), img.cols(), [&](Cell c) {
    if (occupancy.contains(c) && occupancy[c])
      for (int ch = 0; ch < 3; ++ch) img(c.px, c.py, ch) = std::uint8_t(img(c.px, c.py, ch) / 3);
  });
  auto put = [&](Cell c, std::array<std::uint8_t, 3> rgb, int radius) {
    for (int dr = -radius; dr <= radius; ++dr)
      for (int dc = -radius; dc <= radius; ++dc) {
        const Cell n{c.px + dr, c.py + dc};
        if (img.contains(n))
          for (int ch = 0; ch < 3; ++ch) img(n.px, n.py, ch) = rgb[std::size_t(ch)];
      }
  };
  const auto& steps = trajectory.steps;
  for (const auto& s : steps) put(s.cell, {0, 220, 255}, 0);
  if (!steps.empty()) {
    put(steps.front().cell, {0, 200, 0}, 2);
    put(steps.back().cell, {230, 0, 0}, 2);
  }
  return img;
}

std::string trajectory_csv(const navigation::Trajectory& trajectory,
                           const geometry::GridSpec& grid) {
  std::string out = "step,px,py,x_m,z_m,heading_deg,event,note\n";
  char buf[160];
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const auto& s = trajectory.steps[i];
    const auto xz = geometry::cell_center_xz(s.cell, grid);
    std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.4f,%.4f,%.6g,", i, s.cell.px, s.cell.py, xz.x(),
                  xz.y(), s.heading_deg);
    out += buf;
    out += navigation::to_string(s.event);
    out += ',';
    std::string note = s.note;
    for (char& ch : note)
      if (ch == ',' || ch == '\n') ch = ';';
    out += note + "\n";
  }
  return out;
}

}  // namespace ivlmap::io
